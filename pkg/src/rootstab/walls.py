"""Numerical walls in the (s, t) half plane and bounded destabilizer search.

Along ``B = B0 + s H`` the charge of a class ``u`` is

    Re Z = -(H^2 c0/2) s^2 + m_u s - k_u + t c0,    Im Z = m_u - s H^2 c0

with ``m_u = H.ch1^{B0}`` and ``k_u = ch2^{B0}``.  Cross-multiplying the
slope equality gives ``t A = P(s)`` where ``A = c0(v) H.ch1(w) - c0(w) H.ch1(v)``
does not depend on s and ``P`` has degree at most two (the cubic terms
cancel, and the quadratic term is ``-A H^2/2``).
"""

import enum
import math
from concurrent.futures import Executor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .chern import INF, NumClass, bogomolov_ok, line_bundle, point_class, tensor_exp, twist_b
from .errors import BadT, PreconditionViolated, UnboundedRequest, ZeroImaginary
from .numlat import _q, pair
from .stab import Charge, ChargeParams, charge, slope_of_charge


class WallKind(enum.Enum):
    EMPTY = "Empty"
    EVERYWHERE = "Everywhere"
    CURVE = "Curve"
    VERTICAL = "Vertical"


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_sub(p, q):
    n = max(len(p), len(q))
    p = list(p) + [Fraction(0)] * (n - len(p))
    q = list(q) + [Fraction(0)] * (n - len(q))
    return [a - b for a, b in zip(p, q)]


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _family(cfg, u, B0, H):
    """(ch2^B, Im Z) of ``u`` as polynomials in s (ascending coefficients), B = B0 + sH."""
    tw = twist_b(cfg, u, B0)
    h2 = pair(cfg, H, H)
    m = pair(cfg, H, tw.ch1)
    ch2 = [tw.ch2, -m, h2 * u.ch0 / 2]
    im = [m, -h2 * u.ch0]
    return ch2, im


@dataclass(frozen=True)
class WallLocus:
    kind: WallKind
    # t = q[0] s^2 + q[1] s + q[2] (Curve, and Empty when the parabola misses t > 0)
    q: tuple = None
    # t > 0 exactly when (s - center)^2 < radius_sq
    center: Fraction = None
    radius_sq: Fraction = None
    # s values where both charges are real for every t (vertical walls)
    vertical: tuple = ()

    def t_at(self, s):
        a, b, c = self.q
        return a * s * s + b * s + c

    def contains(self, s, t):
        if self.kind is WallKind.EVERYWHERE:
            return t > 0
        if self.kind is WallKind.VERTICAL:
            return t > 0 and s in self.vertical
        if self.kind is WallKind.CURVE:
            return t > 0 and self.t_at(s) == t
        return False

    def interval_floats(self):
        if self.center is None:
            return None
        r = math.sqrt(self.radius_sq)
        return float(self.center) - r, float(self.center) + r

    def apex(self):
        if self.kind is not WallKind.CURVE:
            return None
        return self.center, self.t_at(self.center)


def wall_equation(cfg, v, w, B0, H):
    """Return ``(A, P)`` with the wall being ``t*A == P(s)``; P ascending coefficients."""
    ch2v, imv = _family(cfg, v, B0, H)
    ch2w, imw = _family(cfg, w, B0, H)
    A = v.ch0 * pair(cfg, H, w.ch1) - w.ch0 * pair(cfg, H, v.ch1)
    P = _poly_sub(_poly_mul(ch2v, imw), _poly_mul(ch2w, imv))
    return A, _trim(P)


def wall_locus(cfg, v, w, B0=None, H=None):
    B0 = cfg.b_class() if B0 is None else B0
    H = cfg.h_class() if H is None else H
    A, P = wall_equation(cfg, v, w, B0, H)
    if A == 0:
        if not P:
            return WallLocus(WallKind.EVERYWHERE)
        if len(P) == 1:
            return WallLocus(WallKind.EMPTY)
        # with A = 0 the quadratic coefficient -A H^2/2 vanishes
        assert len(P) == 2
        return WallLocus(WallKind.VERTICAL, vertical=(-P[0] / P[1],))
    P = P + [Fraction(0)] * (3 - len(P))
    q = (P[2] / A, P[1] / A, P[0] / A)
    a, b, c = q
    # a = -H^2/2 < 0: t > 0 between the roots, if any
    center = -b / (2 * a)
    radius_sq = (b * b - 4 * a * c) / (4 * a * a)
    if radius_sq <= 0:
        return WallLocus(WallKind.EMPTY, q=q)
    return WallLocus(WallKind.CURVE, q=q, center=center, radius_sq=radius_sq)


def _charge_st(cfg, u, s, t, B0, H):
    return charge(cfg, u, ChargeParams(B0 + H * s, H, t))


def on_wall(cfg, v, w, s, t, B0=None, H=None):
    s, t = _q(s), _q(t)
    if t <= 0:
        raise BadT(f"t must be positive, got {t}")
    B0 = cfg.b_class() if B0 is None else B0
    H = cfg.h_class() if H is None else H
    zv = _charge_st(cfg, v, s, t, B0, H)
    zw = _charge_st(cfg, w, s, t, B0, H)
    return zv.re * zw.im == zw.re * zv.im


def sample_curve(locus, count, rng):
    """Exact rational points strictly inside the t > 0 arc of a Curve locus."""
    r = _inner_radius(locus)
    pts = []
    while len(pts) < count:
        u = Fraction(rng.randint(-999, 999), 1000)
        s = locus.center + u * r
        t = locus.t_at(s)
        if t > 0:
            pts.append((s, t))
    return pts


def _inner_radius(locus):
    """A rational r with r^2 < radius_sq (shrinks the float guess until it fits)."""
    r = Fraction(math.sqrt(locus.radius_sq)).limit_denominator(10**6)
    while r * r >= locus.radius_sq:
        r *= Fraction(99, 100)
    return r


def sample_grid(locus, count):
    """``count`` evenly spaced exact points on the t > 0 arc of a Curve locus."""
    r = _inner_radius(locus)
    pts = []
    for i in range(1, count + 1):
        s = locus.center - r + 2 * r * Fraction(i, count + 1)
        pts.append((s, locus.t_at(s)))
    return pts


# -- destabilizer search -------------------------------------------------------


@dataclass(frozen=True)
class SearchBounds:
    """Box for the destabilizer scan.

    ``max_cg`` and ``ch2_denom`` are required.  ``ch2_abs_max`` caps |ch2|
    where the numerical conditions leave ch2 unbounded (rank-0 candidates);
    ``ns_abs_max`` caps each NS coordinate and is required when rho > 1.
    ``rank_cap`` is the largest candidate rank when ch0(v) <= 0.
    """

    max_cg: int
    ch2_denom: int
    ch2_abs_max: Fraction = None
    ns_abs_max: int = None
    rank_cap: int = 0

    def __post_init__(self):
        if self.max_cg is None or self.ch2_denom is None:
            raise UnboundedRequest("bounds need max_cg and ch2_denom")
        if self.max_cg < 0 or self.ch2_denom < 1:
            raise UnboundedRequest("max_cg must be >= 0 and ch2_denom >= 1")
        if self.ch2_abs_max is not None:
            object.__setattr__(self, "ch2_abs_max", _q(self.ch2_abs_max))


def _ceil_grid(x, den):
    return math.ceil(x * den)


def _floor_grid(x, den):
    return math.floor(x * den)


def _candidate_ranks(v, bounds):
    if v.ch0 > 0:
        return range(0, math.floor(v.ch0) + 1)
    return range(0, bounds.rank_cap + 1)


def _strata(cfg, v, bounds):
    return [(r, cg) for r in _candidate_ranks(v, bounds) for cg in range(-bounds.max_cg, bounds.max_cg + 1)]


def _ns_ranges(cfg, v, p, r, cg, bounds):
    """Integer ranges of NS coordinates; for rho = 1 cut down by the Im window."""
    if cfg.rho == 1:
        # Im Z(w) = x (H.e) + cg (H.Cg) - r (H.B), with H.e != 0
        he = pair(cfg, p.H, cfg.divisor((1,)))
        const = cg * pair(cfg, p.H, cfg.gerbe()) - r * p.bh(cfg)
        im_v = charge(cfg, v, p).im
        ends = sorted(((0 - const) / he, (im_v - const) / he))
        lo, hi = math.ceil(ends[0]), math.floor(ends[1])
        if bounds.ns_abs_max is not None:
            lo, hi = max(lo, -bounds.ns_abs_max), min(hi, bounds.ns_abs_max)
        return [range(lo, hi + 1)]
    if bounds.ns_abs_max is None:
        raise UnboundedRequest("ns_abs_max is required when rho > 1")
    return [range(-bounds.ns_abs_max, bounds.ns_abs_max + 1)] * cfg.rho


def _ch2_window(cfg, v, p, w_partial, zv, im_w, bounds):
    """Rational interval for ch2(w) implied by the necessary conditions, intersected with the cap."""
    r = w_partial.ch0
    re_v, im_v = zv.re, zv.im
    mu_v = slope_of_charge(zv)
    lo, hi = None, None
    if r > 0:
        # Delta(w) >= 0
        hi = pair(cfg, w_partial.ch1, w_partial.ch1) / (2 * r)
    rest = v.ch0 - r
    if rest != 0:
        # Delta(v - w) >= 0; the direction of the bound follows the sign of rk(v - w)
        d1 = v.ch1 - w_partial.ch1
        edge = v.ch2 - pair(cfg, d1, d1) / (2 * rest)
        if rest > 0:
            lo = edge
        else:
            hi = edge if hi is None else min(hi, edge)
    # Re Z(w) = -ch2(w) + shift', so every Re condition is a bound on ch2(w)
    B = p.B
    base = p.t_value(cfg) * r + pair(cfg, B, w_partial.ch1) - pair(cfg, B, B) / 2 * r
    # Im > 0: mu_sigma(w) > mu_sigma(v);  Im = 0: Re Z(w) < 0
    slope_lo = base + mu_v * im_w if im_w > 0 else base
    lo = slope_lo if lo is None else max(lo, slope_lo)
    if im_w == im_v:
        # Z(v - w) real, so Re Z(v - w) < 0
        edge = base - re_v
        hi = edge if hi is None else min(hi, edge)
    if bounds.ch2_abs_max is not None:
        lo = -bounds.ch2_abs_max if lo is None else max(lo, -bounds.ch2_abs_max)
        hi = bounds.ch2_abs_max if hi is None else min(hi, bounds.ch2_abs_max)
    if lo is None or hi is None:
        raise UnboundedRequest(
            f"ch2 is unbounded in the stratum rank={r}, cg={w_partial.ch1.cg}; supply ch2_abs_max",
            rank=r,
            cg=w_partial.ch1.cg,
        )
    return lo, hi


def passes_filters(cfg, v, w, p, zv=None):
    """The necessary numerical conditions for ``w`` to destabilize ``v``."""
    zv = charge(cfg, v, p) if zv is None else zv
    zw = charge(cfg, w, p)
    if not 0 <= zw.im <= zv.im:
        return False
    # both pieces of a short exact sequence in the heart have charge in the sector
    if zw.im == 0 and not zw.re < 0:
        return False
    if zw.im == zv.im and not zv.re - zw.re < 0:
        return False
    if not (bogomolov_ok(cfg, w) and bogomolov_ok(cfg, v - w)):
        return False
    return slope_of_charge(zw) > slope_of_charge(zv)


def _scan_stratum(cfg, v, p, bounds, r, cg):
    zv = charge(cfg, v, p)
    den = bounds.ch2_denom
    out = []
    for coords in product(*_ns_ranges(cfg, v, p, r, cg, bounds)):
        ch1 = cfg.divisor(coords, cg)
        partial = NumClass(r, ch1, 0)
        im_w = charge(cfg, partial, p).im
        if not 0 <= im_w <= zv.im:
            continue
        lo, hi = _ch2_window(cfg, v, p, partial, zv, im_w, bounds)
        for num in range(_ceil_grid(lo, den), _floor_grid(hi, den) + 1):
            w = NumClass(r, ch1, Fraction(num, den))
            if w.is_zero(cfg):
                continue
            if passes_filters(cfg, v, w, p, zv):
                out.append(w)
    return out


def sort_key(cfg, p):
    def key(w):
        mu = slope_of_charge(charge(cfg, w, p))
        return (-mu if mu != INF else -INF, w.ch0, w.ch1.coords, w.ch1.cg, w.ch2)

    return key


def destabilizer_candidates(cfg, v, p, bounds, executor: Executor = None):
    """All lattice classes in the box passing the necessary destabilizing conditions.

    Candidates are potential destabilizers only.  Strata (rank, gerbe
    coefficient) are independent; pass an ``executor`` to scan them
    concurrently.  The result order is deterministic either way.
    """
    if bounds is None:
        raise UnboundedRequest("bounds are required")
    if charge(cfg, v, p).im <= 0:
        raise ZeroImaginary("target must have Im Z > 0")
    strata = _strata(cfg, v, bounds)
    if executor is None:
        chunks = [_scan_stratum(cfg, v, p, bounds, r, cg) for r, cg in strata]
    else:
        futs = [executor.submit(_scan_stratum, cfg, v, p, bounds, r, cg) for r, cg in strata]
        chunks = [f.result() for f in futs]
    found = [w for chunk in chunks for w in chunk]
    return sorted(found, key=sort_key(cfg, p))


# -- the destabilizing inclusion O(dH - Cg) -> I_Z(dH) ------------------------


@dataclass(frozen=True)
class ExamplePReport:
    E: NumClass
    W: NumClass
    z_E: Charge
    z_W: Charge
    mu_E: object
    mu_W: object
    e_in_positive_im: bool
    destabilizes: bool
    slope_margin: object = None  # mu_W - mu_E when both finite
    im_margin: Fraction = field(default=None)  # Im Z(E) - Im Z(W)


def example_p_report(cfg, d, m, p):
    """E = ch(O(dH)) minus m stacky points; W = ch(O(dH - Cg))."""
    if d < 0 or m < 0:
        raise PreconditionViolated(f"d and m must be nonnegative, got d={d}, m={m}")
    dh = cfg.h_class() * d
    lb = line_bundle(cfg, dh)
    E = lb - point_class(cfg, stacky=True) * m
    W = tensor_exp(cfg, lb, -cfg.gerbe())
    zE, zW = charge(cfg, E, p), charge(cfg, W, p)
    muE, muW = slope_of_charge(zE), slope_of_charge(zW)
    positive = zE.im > 0
    destab = positive and muW > muE and 0 < zW.im <= zE.im
    margin = muW - muE if INF not in (muE, muW) else None
    return ExamplePReport(E, W, zE, zW, muE, muW, positive, destab, margin, zE.im - zW.im)
