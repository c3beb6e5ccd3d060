"""Text formats for configurations, classes and rationals.

Documents are JSON objects whose keys and rationals may be left unquoted::

    {ch0: "1", ch1: ["4"], cg: "-1", ch2: "9/2"}
    {ch0: 1, ch1: [4], cg: -1, ch2: 9/2}

Rationals are integers or strings ``"p/q"``; a negative denominator is
normalized silently.  Floats are rejected so nothing inexact sneaks in.
:func:`emit_config` and :func:`emit_class` write the canonical form, so
``emit(parse(x))`` is the normalization of ``x``.
"""

import json
import re
from fractions import Fraction
from importlib import resources

from .chern import CRClass, NumClass
from .errors import ParseError
from .numlat import build_config

# bare keys, and bare p/q rationals (JSON has no syntax for those)
_BARE = re.compile(r'(?:[{,]\s*)([A-Za-z_][A-Za-z0-9_]*)(?=\s*:)|([+-]?\d+\s*/\s*[+-]?\d+)')
_RATIONAL = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?")

CONFIG_KEYS = ("name", "rho", "gram", "H", "C", "B", "n")
CLASS_KEYS = ("ch0", "ch1", "cg", "ch2", "sectors")
# short names accepted wherever a fixture name is
FIXTURE_ALIASES = {"p2": "p2_n1", "conic": "p2_conic_n2", "quadric": "quadric_n3"}


def _quote_keys(text):
    """Quote bare keys and rationals outside string literals; also return new-to-old offsets."""
    out, origin, pos = [], [], 0

    def keep(chunk, start):
        last = 0
        for m in _BARE.finditer(chunk):
            g = 1 if m.group(1) is not None else 2
            a, b = m.start(g), m.end(g)
            out.append(chunk[last:a])
            origin.extend(range(start + last, start + a))
            out.append('"' + chunk[a:b] + '"')
            origin.extend([start + a, *range(start + a, start + b), start + b])
            last = b
        out.append(chunk[last:])
        origin.extend(range(start + last, start + len(chunk)))

    for m in re.finditer(r'"(?:[^"\\]|\\.)*"', text):
        keep(text[pos : m.start()], pos)
        out.append(m.group(0))
        origin.extend(range(m.start(), m.end()))
        pos = m.end()
    keep(text[pos:], pos)
    origin.append(len(text))
    return "".join(out), origin


def _line_col(text, offset):
    line = text.count("\n", 0, offset) + 1
    return line, offset - (text.rfind("\n", 0, offset) + 1) + 1


def parse_document(text):
    """Relaxed JSON object -> dict; syntax errors carry line and column."""
    quoted, origin = _quote_keys(text)
    try:
        doc = json.loads(quoted)
    except json.JSONDecodeError as exc:
        line, col = _line_col(text, origin[min(exc.pos, len(origin) - 1)])
        raise ParseError(exc.msg, line=line, column=col) from None
    if not isinstance(doc, dict):
        raise ParseError("document must be an object", line=1, column=1)
    return doc


def parse_rational(value, where="value"):
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ParseError(f"{where}: floats are not exact; write \"p/q\" instead of {value!r}")
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected a rational, got {type(value).__name__}")
    m = _RATIONAL.fullmatch(value)
    if not m:
        raise ParseError(f"{where}: malformed rational {value!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"{where}: zero denominator in {value!r}")
    return Fraction(num, den)


def _vector(value, where):
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected an array")
    return [parse_rational(x, f"{where}[{i}]") for i, x in enumerate(value)]


def _matrix(value, where):
    if not isinstance(value, list) or not value:
        raise ParseError(f"{where}: expected a non-empty array of rows")
    rows = [_vector(row, f"{where}[{i}]") for i, row in enumerate(value)]
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ParseError(f"{where}: rows have different lengths {sorted(widths)}")
    if rows[0] and len(rows) != len(rows[0]):
        raise ParseError(f"{where}: matrix is {len(rows)}x{len(rows[0])}, not square")
    return rows


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{where}: expected an integer")
    q = parse_rational(value, where)
    if q.denominator != 1:
        raise ParseError(f"{where}: expected an integer, got {q}")
    return int(q)


def _reject_unknown(doc, allowed, what):
    extra = sorted(set(doc) - set(allowed))
    if extra:
        raise ParseError(f"unknown {what} keys: {', '.join(extra)}")


def config_raw(doc):
    _reject_unknown(doc, CONFIG_KEYS, "config")
    for key in ("rho", "gram", "H", "C", "n"):
        if key not in doc:
            raise ParseError(f"config is missing {key!r}")
    raw = {
        "rho": _int(doc["rho"], "rho"),
        "gram": _matrix(doc["gram"], "gram"),
        "H": _vector(doc["H"], "H"),
        "C": _vector(doc["C"], "C"),
        "n": _int(doc["n"], "n"),
        "name": str(doc.get("name", "")),
    }
    if "B" in doc:
        raw["B"] = _vector(doc["B"], "B")
    return raw


def parse_config_text(text):
    return build_config(config_raw(parse_document(text)))


def bundled_fixtures():
    root = resources.files("rootstab") / "fixtures"
    return sorted(p.name[: -len(".cfg")] for p in root.iterdir() if p.name.endswith(".cfg"))


def fixture_text(name):
    name = name[: -len(".cfg")] if name.endswith(".cfg") else name
    name = FIXTURE_ALIASES.get(name, name)
    path = resources.files("rootstab") / "fixtures" / f"{name}.cfg"
    if not path.is_file():
        raise FileNotFoundError(name)
    return path.read_text(encoding="utf-8")


def load_fixture(name):
    return parse_config_text(fixture_text(name))


def parse_config(path):
    """Read a config file; a bundled fixture name (with or without ``.cfg``) also works."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        try:
            text = fixture_text(str(path).rsplit("/", 1)[-1])
        except FileNotFoundError:
            raise ParseError(f"no config file or bundled fixture named {str(path)!r}") from None
    return parse_config_text(text)


def class_from_doc(doc, cfg):
    _reject_unknown(doc, CLASS_KEYS, "class")
    for key in ("ch0", "ch1", "ch2"):
        if key not in doc:
            raise ParseError(f"class is missing {key!r}")
    coords = _vector(doc["ch1"], "ch1")
    if len(coords) != cfg.rho:
        raise ParseError(f"ch1 has {len(coords)} coordinates, config has rho = {cfg.rho}")
    cg = parse_rational(doc.get("cg", 0), "cg")
    base = NumClass(parse_rational(doc["ch0"], "ch0"), cfg.divisor(coords, cg), parse_rational(doc["ch2"], "ch2"))
    if "sectors" not in doc:
        return base
    secs = doc["sectors"]
    if not isinstance(secs, list):
        raise ParseError("sectors: expected an array of [r, d] pairs")
    pairs = []
    for i, pr in enumerate(secs):
        if not isinstance(pr, list) or len(pr) != 2:
            raise ParseError(f"sectors[{i}]: expected a pair [r, d]")
        pairs.append((parse_rational(pr[0], f"sectors[{i}][0]"), parse_rational(pr[1], f"sectors[{i}][1]")))
    if len(pairs) != cfg.n - 1:
        raise ParseError(f"expected {cfg.n - 1} sector pairs, got {len(pairs)}")
    return CRClass(base, tuple(pairs))


def parse_class(text, cfg):
    return class_from_doc(parse_document(text), cfg)


# -- emission ------------------------------------------------------------------


def fmt_q(x):
    """Exact text for a rational; ``+inf`` for the rank-zero slope sentinel."""
    if isinstance(x, float):
        if x == float("inf"):
            return "+inf"
        raise TypeError("refusing to format an inexact float")
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _qs(vec):
    return "[" + ", ".join(f'"{fmt_q(x)}"' for x in vec) + "]"


def emit_class(v):
    base = v.base if isinstance(v, CRClass) else v
    parts = [
        f'ch0: "{fmt_q(base.ch0)}"',
        f"ch1: {_qs(base.ch1.coords)}",
        f'cg: "{fmt_q(base.ch1.cg)}"',
        f'ch2: "{fmt_q(base.ch2)}"',
    ]
    if isinstance(v, CRClass):
        parts.append("sectors: [" + ", ".join(_qs(pr) for pr in v.sectors) + "]")
    return "{" + ", ".join(parts) + "}"


def emit_config(cfg):
    lines = [
        "{",
        f"  name: {json.dumps(cfg.name)},",
        f"  rho: {cfg.rho},",
        "  gram: [" + ", ".join(_qs(row) for row in cfg.gram) + "],",
        f"  H: {_qs(cfg.H)},",
        f"  C: {_qs(cfg.C)},",
        f"  B: {_qs(cfg.B)},",
        f"  n: {cfg.n}",
        "}",
    ]
    return "\n".join(lines) + "\n"


def normalize_config_text(text):
    return emit_config(parse_config_text(text))
