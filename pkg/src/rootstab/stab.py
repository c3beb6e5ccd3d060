"""Central charges, sigma-slopes and phases, heart membership from HN data.

The charge is ``Z_t(v) = -ch2^B + t ch0^B + i H.ch1^B``; the geometric case
uses ``t = H^2/2``.  Phases are never turned into angles: every comparison is
an exact sign test on a 2x2 cross product.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from .chern import INF, bogomolov_ok, slope_b, slope_h, twist_b, zero_class
from .errors import (
    DimensionMismatch,
    HypothesisViolated,
    NonPositive,
    OutOfSector,
    PreconditionViolated,
    ZeroCharge,
)
from .numlat import _q, pair


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def of(cls, x):
        return cls((x > 0) - (x < 0))


class HeartSide(enum.Enum):
    IN_T = "InT"
    IN_F_SHIFT = "InFshift"
    MIXED = "Mixed"


@dataclass(frozen=True)
class Charge:
    re: Fraction
    im: Fraction

    def __add__(self, other):
        return Charge(self.re + other.re, self.im + other.im)

    def __neg__(self):
        return Charge(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def in_sector(self):
        """Semi-closed upper half plane: Im > 0, or Im = 0 and Re < 0."""
        return self.im > 0 or (self.im == 0 and self.re < 0)


@dataclass(frozen=True)
class ChargeParams:
    B: object
    H: object
    t: Fraction = None  # None selects the geometric value H^2/2

    def __post_init__(self):
        if self.t is not None:
            object.__setattr__(self, "t", _q(self.t))

    @classmethod
    def of(cls, cfg, t=None, B=None, H=None, s=0):
        """Params with ``B = B + s H`` (defaults: config B and H)."""
        H = cfg.h_class() if H is None else H
        B = cfg.b_class() if B is None else B
        if s:
            B = B + H * s
        p = cls(B, H, t)
        check_params(cfg, p)
        return p

    def t_value(self, cfg):
        if self.t is None:
            return pair(cfg, self.H, self.H) / 2
        return self.t

    def bh(self, cfg):
        return pair(cfg, self.B, self.H)


def check_params(cfg, p):
    if p.B.cg != 0 or p.H.cg != 0:
        raise PreconditionViolated("B and H must lie in NS(X) (no gerbe component)")
    if pair(cfg, p.H, p.H) <= 0 or pair(cfg, p.H, cfg.c_class()) <= 0:
        raise NonPositive("H must satisfy H^2 > 0 and H.C > 0")
    if p.t is not None and p.t <= 0:
        raise NonPositive(f"t must be positive, got {p.t}")


def charge(cfg, v, p):
    tw = twist_b(cfg, v, p.B)
    return Charge(-tw.ch2 + p.t_value(cfg) * tw.ch0, pair(cfg, p.H, tw.ch1))


def charge_deformed(cfg, v, p, eps, eps_prime):
    """Charge deformed along the twisted sectors.

    Sector k contributes ``-eps_k d_k`` to the real part and
    ``eps'_k r_k (H.Cg)`` to the imaginary part (its ch1 is ``r_k Cg``, which
    the B-twist leaves alone because the sector class has rank 0 on X).
    """
    eps = tuple(_q(e) for e in eps)
    eps_prime = tuple(_q(e) for e in eps_prime)
    k = cfg.n - 1
    if len(eps) != k or len(eps_prime) != k or len(v.sectors) != k:
        raise DimensionMismatch(f"deformation vectors and sectors must have length {k}")
    z = charge(cfg, v.base, p)
    hg = pair(cfg, p.H, cfg.gerbe())
    re = z.re - sum((e * d for e, (_, d) in zip(eps, v.sectors)), Fraction(0))
    im = z.im + sum((e * r * hg for e, (r, _) in zip(eps_prime, v.sectors)), Fraction(0))
    return Charge(re, im)


def slope_of_charge(z):
    if z.im == 0:
        return INF
    return -z.re / z.im


def sigma_slope(cfg, v, p):
    """``-Re Z / Im Z``; ``INF`` on the real axis."""
    return slope_of_charge(charge(cfg, v, p))


def compare_charges(z1, z2):
    """Phase order of two charges in the stability sector."""
    for z in (z1, z2):
        if z.is_zero():
            raise ZeroCharge("charge is zero")
        if not z.in_sector():
            raise OutOfSector(f"charge ({z.re}, {z.im}) is outside the semi-closed upper half plane")
    # positive cross product: z1 is counter-clockwise of z2, i.e. larger phase
    return Ordering.of(z2.re * z1.im - z2.im * z1.re)


def phase_compare(cfg, v, w, p):
    return compare_charges(charge(cfg, v, p), charge(cfg, w, p))


@dataclass(frozen=True)
class HNData:
    """mu_H Harder-Narasimhan factors, slopes strictly decreasing."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        slopes = self.slopes
        if any(a <= b for a, b in zip(slopes, slopes[1:])):
            raise PreconditionViolated(f"HN slopes must strictly decrease: {slopes}")
        for mu, cls in self.factors:
            if cls.ch0 < 0:
                raise PreconditionViolated("HN factors have nonnegative rank")
            if cls.ch0 == 0 and mu != INF:
                raise PreconditionViolated("rank-zero HN factors only occur at slope +inf")

    @classmethod
    def from_classes(cls, cfg, classes, H=None):
        """Group classes by mu_H slope and order them; equal slopes are summed."""
        grouped = {}
        for c in classes:
            mu = slope_h(cfg, c, H)
            grouped[mu] = grouped[mu] + c if mu in grouped else c
        return cls(tuple(sorted(grouped.items(), key=lambda kv: kv[0], reverse=True)))

    @property
    def slopes(self):
        return [mu for mu, _ in self.factors]

    def total(self, cfg):
        out = zero_class(cfg)
        for _, c in self.factors:
            out = out + c
        return out


def heart_side(cfg, hn, p):
    if not hn.factors:
        raise PreconditionViolated("empty HN data")
    bh = p.bh(cfg)
    slopes = hn.slopes
    if min(slopes) > bh:
        return HeartSide.IN_T
    if max(slopes) <= bh:
        return HeartSide.IN_F_SHIFT
    return HeartSide.MIXED


def slice_hn(cfg, hn, a, closed=True):
    """Split the total class at slope ``a``: ``(>= a, < a)``, or ``(> a, <= a)`` if not closed."""
    geq = zero_class(cfg)
    lt = zero_class(cfg)
    for mu, c in hn.factors:
        upper = mu >= a if closed else mu > a
        if upper:
            geq = geq + c
        else:
            lt = lt + c
    return geq, lt


def stability_positivity_check(cfg, hn0, hn1, p):
    """Z of ``H^0 - H^{-1}`` lands in the stability sector.

    Preconditions are checked first; a ``False`` return means the data cannot
    come from an actual object of the tilted heart.
    """
    bh = p.bh(cfg)
    for mu, c in hn0.factors:
        if not mu > bh:
            raise PreconditionViolated(f"H^0 factor slope {mu} is not > B.H = {bh}")
    for mu, c in hn1.factors:
        if c.ch0 <= 0:
            raise PreconditionViolated("H^-1 factors must be torsion free (positive rank)")
        if not mu <= bh:
            raise PreconditionViolated(f"H^-1 factor slope {mu} is not <= B.H = {bh}")
    for label, hn in (("H^0", hn0), ("H^-1", hn1)):
        for mu, c in hn.factors:
            if c.ch0 > 0 and not bogomolov_ok(cfg, c):
                raise PreconditionViolated(f"{label} factor of slope {mu} violates Bogomolov")
    total = hn0.total(cfg) - hn1.total(cfg)
    z = charge(cfg, total, p)
    if z.is_zero():
        return False
    return z.in_sector()


def nu(cfg, v, B):
    return twist_b(cfg, v, B).ch2 / v.ch0


def large_volume_compare(cfg, v, w, B, H):
    """Lexicographic (mu^B, nu_{B,H}) order: the t -> infinity limit of phase order."""
    keys = []
    for x in (v, w):
        if x.ch0 <= 0:
            raise HypothesisViolated("large volume comparison needs positive rank")
        mu = slope_b(cfg, x, B, H)
        if mu <= 0:
            raise HypothesisViolated(f"large volume comparison needs mu^B > 0, got {mu}")
        keys.append((mu, nu(cfg, x, B)))
    kv, kw = keys
    if kv == kw:
        return Ordering.EQUAL
    return Ordering.LESS if kv < kw else Ordering.GREATER
