"""Command line front end: ``rootstab -c CONFIG [--format F] COMMAND ...``.

Every invocation prints exactly one document, either a result or an error.
Exit status is 0 for a result, 1 for a library error and 2 for a usage or
parse error.
"""

import argparse
import csv
import enum
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import grammar
from .chern import CRClass, NumClass, slope_b
from .errors import ParseError, RootStabError
from .stab import ChargeParams, charge, charge_deformed, large_volume_compare, nu, slope_of_charge
from .support import (
    Lattice,
    QuadraticForm,
    cr_norm_sq,
    delta_form,
    euclidean_form,
    explicit_constants,
    kernel_form_check,
    lattice_dim,
    support_ratio,
)
from .verify import run_suite
from .walls import SearchBounds, WallKind, destabilizer_candidates, example_p_report, sample_grid, wall_locus


class UsageError(RootStabError):
    code = "USAGE"


@dataclass
class Result:
    """A result document: ordered scalar fields plus an optional table of rows."""

    command: str
    fields: dict = field(default_factory=dict)
    columns: tuple = ()
    rows: list = field(default_factory=list)


# -- rendering -----------------------------------------------------------------


def _exact(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, Fraction)) or (isinstance(x, float) and x == float("inf")):
        return grammar.fmt_q(x)
    if isinstance(x, enum.Enum):
        return str(x.value)
    if x is None:
        return ""
    if isinstance(x, (list, tuple)):
        return "[" + " ".join(_exact(y) for y in x) + "]"
    return str(x)


def _machine_value(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, Fraction, float)):
        return grammar.fmt_q(x)
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, (list, tuple)):
        return [_machine_value(y) for y in x]
    if isinstance(x, dict):
        return {k: _machine_value(v) for k, v in x.items()}
    return str(x)


def _approx(x):
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{grammar.fmt_q(x)} (≈ {float(x):.6g})"
    return _exact(x)


def render(res, fmt):
    if fmt == "machine":
        doc = {"command": res.command, **{k: _machine_value(v) for k, v in res.fields.items()}}
        if res.columns:
            doc["rows"] = [dict(zip(res.columns, (_machine_value(c) for c in row))) for row in res.rows]
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        if res.columns:
            out.writerow(res.columns)
            out.writerows([_exact(c) for c in row] for row in res.rows)
        else:
            out.writerow(res.fields.keys())
            out.writerow(_exact(v) for v in res.fields.values())
        return buf.getvalue()
    lines = []
    if res.fields:
        width = max(len(k) for k in res.fields)
        lines += [f"{k.ljust(width)}  {_approx(v)}" for k, v in res.fields.items()]
    if res.columns:
        cells = [[_approx(c) for c in row] for row in res.rows]
        widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(res.columns)]
        if lines:
            lines.append("")
        lines.append("  ".join(h.ljust(w) for h, w in zip(res.columns, widths)).rstrip())
        lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def render_error(exc, fmt):
    code = getattr(exc, "code", "ERROR")
    details = {k: _machine_value(v) if not isinstance(v, (NumClass, CRClass)) else grammar.emit_class(v)
               for k, v in getattr(exc, "details", {}).items()}
    if fmt == "machine":
        return json.dumps({"error": {"code": code, "message": str(exc), **details}}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows([["error", "message"], [code, str(exc)]])
        return buf.getvalue()
    return f"error [{code}]: {exc}\n"


# -- argument helpers ----------------------------------------------------------


def _rational_arg(text):
    try:
        return grammar.parse_rational(text.strip())
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rationals_arg(text):
    if not text.strip():
        return []
    return [_rational_arg(x) for x in text.split(",")]


def _bounds_arg(text):
    keys = {"cg": "max_cg", "den": "ch2_denom", "ch2": "ch2_abs_max", "ns": "ns_abs_max", "rank": "rank_cap"}
    kw = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in keys:
            raise argparse.ArgumentTypeError(f"bad bounds entry {item!r}; expected cg=,den=[,ch2=,ns=,rank=]")
        q = _rational_arg(value)
        kw[keys[name]] = q if name == "ch2" else int(q)
    return kw


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _classes(args, cfg, count=None):
    texts = args.cls or []
    if count is not None and len(texts) != count:
        raise UsageError(f"{args.command} needs exactly {count} --class argument(s), got {len(texts)}")
    return [grammar.parse_class(t, cfg) for t in texts]


def _base(v):
    return v.base if isinstance(v, CRClass) else v


def _params(args, cfg):
    return ChargeParams.of(cfg, t=args.t, s=args.s or 0)


# -- commands ------------------------------------------------------------------


def cmd_charge(args, cfg):
    p = _params(args, cfg)
    rows = []
    for v in _classes(args, cfg):
        if isinstance(v, CRClass):
            raise UsageError("charge takes ordinary classes; use orbcharge for sector data")
        z = charge(cfg, v, p)
        rows.append((grammar.emit_class(v), z.re, z.im, slope_of_charge(z)))
    if not rows:
        raise UsageError("charge needs at least one --class")
    return Result("charge", {"t": p.t_value(cfg), "s": args.s or Fraction(0)}, ("class", "re", "im", "mu_sigma"), rows)


def _sector_class(v, cfg):
    if isinstance(v, CRClass):
        return v
    return CRClass(v, ((0, 0),) * (cfg.n - 1))


def _eps(values, cfg, flag):
    k = cfg.n - 1
    if values is None:
        return [Fraction(0)] * k
    if len(values) != k:
        raise UsageError(f"{flag} needs {k} comma-separated values")
    return values


def cmd_orbcharge(args, cfg):
    p = _params(args, cfg)
    eps, epsp = _eps(args.eps, cfg, "--eps"), _eps(args.epsprime, cfg, "--epsprime")
    rows = []
    for v in _classes(args, cfg):
        crv = _sector_class(v, cfg)
        z = charge_deformed(cfg, crv, p, eps, epsp)
        rows.append((grammar.emit_class(crv), z.re, z.im, slope_of_charge(z), cr_norm_sq(crv, cfg)))
    if not rows:
        raise UsageError("orbcharge needs at least one --class")
    return Result(
        "orbcharge",
        {"t": p.t_value(cfg), "eps": eps, "epsprime": epsp},
        ("class", "re", "im", "mu_sigma", "norm_sq"),
        rows,
    )


def cmd_wall(args, cfg):
    v, w = (_base(x) for x in _classes(args, cfg, 2))
    locus = wall_locus(cfg, v, w)
    fields = {"kind": locus.kind}
    if locus.q is not None:
        fields.update({"q_ss": locus.q[0], "q_s": locus.q[1], "q_0": locus.q[2]})
    if locus.kind is WallKind.CURVE:
        a, t = locus.apex()
        fields.update({"center": locus.center, "radius_sq": locus.radius_sq, "apex_s": a, "apex_t": t})
    if locus.kind is WallKind.VERTICAL:
        fields["vertical_s"] = list(locus.vertical)
    res = Result("wall", fields)
    if args.csv:
        if locus.kind is not WallKind.CURVE:
            raise UsageError(f"--csv samples need a Curve wall, got {locus.kind.value}")
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            out = csv.writer(fh, lineterminator="\n")
            out.writerow(("s", "t"))
            out.writerows((grammar.fmt_q(s), grammar.fmt_q(t)) for s, t in sample_grid(locus, args.samples))
        res.fields["csv"] = args.csv
    return res


def cmd_destab(args, cfg):
    (v,) = (_base(x) for x in _classes(args, cfg, 1))
    if args.bounds is None:
        raise UsageError("destab needs --bounds cg=<int>,den=<int>")
    kw = dict(args.bounds)
    if "max_cg" not in kw or "ch2_denom" not in kw:
        raise UsageError("--bounds needs both cg= and den=")
    bounds = SearchBounds(**kw)
    p = _params(args, cfg)
    if args.jobs > 1:
        with ThreadPoolExecutor(args.jobs) as ex:
            found = destabilizer_candidates(cfg, v, p, bounds, ex)
    else:
        found = destabilizer_candidates(cfg, v, p, bounds)
    rows = []
    for w in found:
        z = charge(cfg, w, p)
        rows.append((w.ch0, list(w.ch1.coords), w.ch1.cg, w.ch2, z.im, slope_of_charge(z)))
    zv = charge(cfg, v, p)
    return Result(
        "destab",
        {"target": grammar.emit_class(v), "mu_sigma": slope_of_charge(zv), "count": len(rows),
         "note": "potential destabilizers: necessary numerical conditions only"},
        ("ch0", "ch1", "cg", "ch2", "im", "mu_sigma"),
        rows,
    )


def cmd_example_p(args, cfg):
    p = _params(args, cfg)
    r = example_p_report(cfg, args.d, args.m, p)
    return Result(
        "exampleP",
        {
            "E": grammar.emit_class(r.E),
            "W": grammar.emit_class(r.W),
            "Z_E_re": r.z_E.re,
            "Z_E_im": r.z_E.im,
            "Z_W_re": r.z_W.re,
            "Z_W_im": r.z_W.im,
            "mu_sigma_E": r.mu_E,
            "mu_sigma_W": r.mu_W,
            "E_positive_im": r.e_in_positive_im,
            "destabilizes": r.destabilizes,
            "slope_margin": r.slope_margin,
            "im_margin": r.im_margin,
        },
    )


def cmd_constants(args, cfg):
    if args.a is None:
        raise UsageError("constants needs -a")
    t = cfg.H2 / 2 if args.t is None else args.t
    k = explicit_constants(cfg, t, args.a)
    return Result("constants", {"t": t, "a": args.a, **k.as_dict()})


def cmd_verify(args, cfg):
    results = run_suite(cfg, trials=args.trials, seed=args.seed)
    rows = [(r.module, r.name, r.passed, r.trials, r.detail) for r in results]
    return Result(
        "verify",
        {"passed": sum(r.passed for r in results), "failed": sum(not r.passed for r in results),
         "all_passed": all(r.passed for r in results)},
        ("module", "property", "passed", "trials", "detail"),
        rows,
    )


def cmd_largevolume(args, cfg):
    v, w = (_base(x) for x in _classes(args, cfg, 2))
    B = cfg.b_class() + cfg.h_class() * (args.s or 0)
    H = cfg.h_class()
    order = large_volume_compare(cfg, v, w, B, H)
    return Result(
        "largevolume",
        {"mu_B_v": slope_b(cfg, v, B, H), "nu_v": nu(cfg, v, B),
         "mu_B_w": slope_b(cfg, w, B, H), "nu_w": nu(cfg, w, B), "order": order.name},
    )


def cmd_supportratio(args, cfg):
    p = _params(args, cfg)
    eps, epsp = _eps(args.eps, cfg, "--eps"), _eps(args.epsprime, cfg, "--epsprime")
    samples = [_sector_class(v, cfg) for v in _classes(args, cfg)]
    ratio, arg = support_ratio(cfg, samples, lambda crv: charge_deformed(cfg, crv, p, eps, epsp))
    return Result(
        "supportratio",
        {"samples": len(samples), "ratio_sq": ratio, "argmax": grammar.emit_class(arg) if arg is not None else None},
    )


def _form(args, cfg, lattice):
    dim = lattice_dim(cfg, lattice)
    if args.gram:
        doc = grammar.parse_document('{"gram": ' + args.gram + "}")
        rows = grammar._matrix(doc["gram"], "gram")
        return QuadraticForm(rows)
    if args.form == "delta":
        return delta_form(cfg, lattice)
    if args.form == "zero":
        return euclidean_form(dim, 0)
    return euclidean_form(dim, -1 if args.form == "-euclidean" else 1)


def cmd_kernelcheck(args, cfg):
    lattice = Lattice.CR if args.lattice == "cr" else Lattice.ORDINARY
    p = _params(args, cfg)
    eps = args.eps if lattice is Lattice.CR else None
    epsp = args.epsprime if lattice is Lattice.CR else None
    res = kernel_form_check(cfg, _form(args, cfg, lattice), p, lattice, eps, epsp)
    return Result(
        "kernelcheck",
        {"lattice": lattice, "verdict": res.verdict, "witness": list(res.witness) if res.witness else None,
         "inertia": list(res.inertia)},
        ("kernel_basis",),
        [(list(b),) for b in res.kernel_basis],
    )


COMMANDS = {
    "charge": cmd_charge,
    "orbcharge": cmd_orbcharge,
    "wall": cmd_wall,
    "destab": cmd_destab,
    "exampleP": cmd_example_p,
    "constants": cmd_constants,
    "verify": cmd_verify,
    "largevolume": cmd_largevolume,
    "supportratio": cmd_supportratio,
    "kernelcheck": cmd_kernelcheck,
}


def build_parser():
    ap = _Parser(prog="rootstab", description="Exact tilt-stability calculus on root stacks of surfaces.")
    ap.add_argument("-c", "--config", required=True, help="config file, or a bundled fixture name")
    ap.add_argument("--format", choices=("table", "csv", "machine"), default="table")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, t=True, s=True, cls=True):
        sp = sub.add_parser(name, help=help_)
        if t:
            sp.add_argument("-t", type=_rational_arg, default=None, help="t > 0 (default H^2/2)")
        if s:
            sp.add_argument("-s", type=_rational_arg, default=None, help="B = B0 + s H")
        if cls:
            sp.add_argument("--class", dest="cls", action="append", metavar="CLASS", help="class document")
        return sp

    add("charge", "central charge and sigma-slope")
    sp = add("orbcharge", "deformed charge of Chen-Ruan classes")
    sp.add_argument("--eps", type=_rationals_arg)
    sp.add_argument("--epsprime", type=_rationals_arg)
    sp = add("wall", "numerical wall between two classes", t=False, s=False)
    sp.add_argument("--csv", help="write (s, t) samples along the curve")
    sp.add_argument("--samples", type=int, default=21)
    sp = add("destab", "bounded search for potential destabilizers")
    sp.add_argument("--bounds", type=_bounds_arg)
    sp.add_argument("--jobs", type=int, default=1)
    sp = add("exampleP", "O(dH - Cg) against O(dH) minus m stacky points", cls=False)
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("-m", type=int, required=True)
    sp = add("constants", "closed-form constants", s=False, cls=False)
    sp.add_argument("-a", type=_rational_arg)
    sp = add("verify", "run the invariant suite", t=False, s=False, cls=False)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    add("largevolume", "twisted Gieseker order of two classes", t=False)
    sp = add("supportratio", "max ||v||^2/|Z(v)|^2 over samples")
    sp.add_argument("--eps", type=_rationals_arg)
    sp.add_argument("--epsprime", type=_rationals_arg)
    sp = add("kernelcheck", "quadratic form on ker Z", cls=False)
    sp.add_argument("--lattice", choices=("ordinary", "cr"), default="ordinary")
    sp.add_argument("--form", choices=("delta", "zero", "euclidean", "-euclidean"), default="delta")
    sp.add_argument("--gram", help="explicit symmetric matrix, JSON rows of rationals")
    sp.add_argument("--eps", type=_rationals_arg)
    sp.add_argument("--epsprime", type=_rationals_arg)
    return ap


def _format_hint(argv):
    for i, a in enumerate(argv):
        if a == "--format" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--format="):
            return a.split("=", 1)[1]
    return "table"


def run(argv=None):
    """Run one command; returns ``(status, text)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = _format_hint(argv)
    fmt = fmt if fmt in ("table", "csv", "machine") else "table"
    try:
        args = build_parser().parse_args(argv)
        cfg = grammar.parse_config(args.config)
        res = COMMANDS[args.command](args, cfg)
        return 0, render(res, args.format)
    except (UsageError, ParseError) as exc:
        return 2, render_error(exc, fmt)
    except RootStabError as exc:
        return 1, render_error(exc, fmt)
    except (ValueError, OSError) as exc:
        return 1, render_error(exc, fmt)


def main(argv=None):
    status, text = run(argv)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
