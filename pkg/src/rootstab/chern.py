"""Chern characters on the root stack.

A :class:`NumClass` is ``(ch0, ch1, ch2)`` with ``ch1`` a
:class:`~rootstab.numlat.DivisorClass` and ``ch2`` measured in units where a
point has degree 1 (so ``Bmu_n`` contributes ``1/n``).
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BadWindow,
    BTwistWithGerbeComponent,
    RankMismatch,
    SectorCountMismatch,
    SectorOutOfRange,
)
from .numlat import DivisorClass, _q, pair

INF = math.inf


@dataclass(frozen=True)
class NumClass:
    ch0: Fraction
    ch1: DivisorClass
    ch2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ch0", _q(self.ch0))
        object.__setattr__(self, "ch2", _q(self.ch2))

    def __add__(self, other):
        return NumClass(self.ch0 + other.ch0, self.ch1 + other.ch1, self.ch2 + other.ch2)

    def __neg__(self):
        return NumClass(-self.ch0, -self.ch1, -self.ch2)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = _q(c)
        return NumClass(c * self.ch0, self.ch1 * c, c * self.ch2)

    __rmul__ = __mul__

    def canonical(self, cfg):
        return NumClass(self.ch0, cfg.fold(self.ch1), self.ch2)

    def coordinates(self, cfg):
        """``(ch0, canonical ch1 coordinates..., ch2)``."""
        return (self.ch0, *cfg.canonical(self.ch1), self.ch2)

    def is_zero(self, cfg):
        return not any(self.coordinates(cfg))


def zero_class(cfg):
    return NumClass(0, cfg.zero_divisor(), 0)


def point_class(cfg, stacky=False):
    """Skyscraper class: ``(0,0,1)``, or ``(0,0,1/n)`` for a point on the gerbe."""
    return NumClass(0, cfg.zero_divisor(), Fraction(1, cfg.n) if stacky else 1)


def num_equal(cfg, v, w):
    return v.coordinates(cfg) == w.coordinates(cfg)


@dataclass(frozen=True)
class CRClass:
    """Orbifold Chern character: untwisted class plus (rank, degree) per twisted sector."""

    base: NumClass
    sectors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "sectors", tuple((_q(r), _q(d)) for r, d in self.sectors))

    def __add__(self, other):
        if len(self.sectors) != len(other.sectors):
            raise SectorCountMismatch("different numbers of twisted sectors")
        return CRClass(
            self.base + other.base,
            tuple((r1 + r2, d1 + d2) for (r1, d1), (r2, d2) in zip(self.sectors, other.sectors)),
        )

    def __mul__(self, c):
        c = _q(c)
        return CRClass(self.base * c, tuple((c * r, c * d) for r, d in self.sectors))

    __rmul__ = __mul__

    def coordinates(self, cfg):
        """Chen-Ruan coordinate vector: ch0, ch1 (NS), ch2, then r_k, d_k per sector."""
        out = list(self.base.coordinates(cfg))
        for r, d in self.sectors:
            out += [r, d]
        return tuple(out)


@dataclass(frozen=True)
class ParabolicData:
    """Sector classes ``E_0..E_{n-1}`` on X and optional cokernel ranks ``r_{j,k}``.

    ``cok_ranks`` maps ``(j, k)`` to the rank on C of ``G_{j,k} = coker(e_{j,k})``.
    """

    sector_classes: tuple
    cok_ranks: dict = field(default=None, hash=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "sector_classes", tuple(self.sector_classes))
        if self.cok_ranks is not None:
            object.__setattr__(self, "cok_ranks", {tuple(k): _q(v) for k, v in self.cok_ranks.items()})


def _require_no_gerbe(d, what):
    if d.cg != 0:
        raise BTwistWithGerbeComponent(f"{what} must lie in NS(X); got gerbe coefficient {d.cg}")


def twist_b(cfg, v, B):
    """``ch^B = e^{-B} ch``."""
    _require_no_gerbe(B, "B")
    return NumClass(
        v.ch0,
        v.ch1 - B * v.ch0,
        v.ch2 - pair(cfg, B, v.ch1) + pair(cfg, B, B) / 2 * v.ch0,
    )


def tensor_exp(cfg, v, D):
    """``e^D ch``: the character of ``E (x) O(D)``; ``D`` may involve the gerbe class."""
    return NumClass(
        v.ch0,
        v.ch1 + D * v.ch0,
        v.ch2 + pair(cfg, D, v.ch1) + pair(cfg, D, D) / 2 * v.ch0,
    )


def line_bundle(cfg, D):
    return tensor_exp(cfg, NumClass(1, cfg.zero_divisor(), 0), D)


def discriminant(cfg, v):
    return pair(cfg, v.ch1, v.ch1) - 2 * v.ch0 * v.ch2


def bogomolov_ok(cfg, v):
    return discriminant(cfg, v) >= 0


def gerbe_sheaf_class(cfg, k, r, d):
    """Class of ``j_* F rho_k`` for F on C of rank r and degree d."""
    if not 0 <= k <= cfg.n - 1:
        raise SectorOutOfRange(f"sector index {k} outside 0..{cfg.n - 1}")
    r, d = _q(r), _q(d)
    return NumClass(
        0,
        cfg.divisor(cg=r),
        r * Fraction(-2 * k - 1, 2) * cfg.gerbe_sq + d / cfg.n,
    )


def _common_rank(p):
    ranks = {e.ch0 for e in p.sector_classes}
    if len(ranks) != 1:
        raise RankMismatch(f"sector classes have different ranks {sorted(ranks)}")
    return ranks.pop()


def sector_pushforward(cfg, p):
    """Assemble ``ch(E)`` on the root stack from the sector classes ``E_k``."""
    n = cfg.n
    if len(p.sector_classes) != n:
        raise SectorCountMismatch(f"expected {n} sector classes, got {len(p.sector_classes)}")
    for e in p.sector_classes:
        _require_no_gerbe(e.ch1, "sector class ch1")
    ch0 = _common_rank(p)
    ch1 = cfg.zero_divisor()
    ch2 = Fraction(0)
    C = cfg.c_class()
    for k, e in enumerate(p.sector_classes):
        ch1 = ch1 + e.ch1
        ch2 += e.ch2 / n + Fraction(n - 2 * k - 1, 2 * n * n) * pair(cfg, e.ch1, C)
    return NumClass(ch0, ch1 * Fraction(1, n), ch2)


def line_bundle_parabolic(cfg, m):
    """Sector data of ``O(m Cg)`` for ``0 <= m < n``: O_X below ``n-m``, O_X(C) from there on."""
    n = cfg.n
    if not 0 <= m < n:
        raise SectorOutOfRange(f"m must lie in 0..{n - 1}")
    o = NumClass(1, cfg.zero_divisor(), 0)
    oc = line_bundle(cfg, cfg.c_class())
    return ParabolicData(tuple(o if k < n - m else oc for k in range(n)))


def orbifold_ch(cfg, v, gdata):
    """Bundle a class with the (rank, degree) data of ``G_{0,k}``, k = 1..n-1."""
    gdata = tuple(gdata)
    if len(gdata) != cfg.n - 1:
        raise SectorCountMismatch(f"expected {cfg.n - 1} sector pairs, got {len(gdata)}")
    return CRClass(v, gdata)


def validate_parabolic(cfg, p):
    """Check the rank inequalities on cokernel ranks; returns a list of violations."""
    problems = []
    ranks = {e.ch0 for e in p.sector_classes}
    if len(ranks) != 1:
        problems.append(f"sector ranks differ: {sorted(ranks)}")
    ch0 = max(ranks) if ranks else Fraction(0)
    cok = p.cok_ranks or {}
    chain = [cok.get((0, k)) for k in range(1, cfg.n)]
    prev = Fraction(0)
    for k, r in enumerate(chain, start=1):
        if r is None:
            continue
        if k == 1 and r < 0:
            problems.append(f"r_0,1 = {r} < 0")
        if r < prev:
            problems.append(f"chain not monotone: r_0,{k - 1} = {prev} > r_0,{k} = {r}")
        prev = r
    for (j, k), r in sorted(cok.items()):
        if r > ch0:
            problems.append(f"r_{j},{k} = {r} > ch0 = {ch0}")
    return problems


def integrality_warnings(cfg, v):
    """Denominators larger than any sheaf class can produce (advisory only)."""
    out = []
    n = cfg.n
    if v.ch2.denominator > 2 * n * n:
        out.append(f"ch2 denominator {v.ch2.denominator} exceeds 2n^2 = {2 * n * n}")
    if v.ch1.cg.denominator > n:
        out.append(f"gerbe coefficient denominator {v.ch1.cg.denominator} exceeds n = {n}")
    return out


def slope_b(cfg, v, B=None, H=None):
    """Twisted slope ``H.ch1^B / ch0``; ``INF`` for rank zero."""
    if v.ch0 == 0:
        return INF
    H = cfg.h_class() if H is None else H
    B = cfg.zero_divisor() if B is None else B
    return pair(cfg, H, twist_b(cfg, v, B).ch1) / v.ch0


def slope_h(cfg, v, H=None):
    return slope_b(cfg, v, None, H)


def ch2_bound(cfg, factors, a, b, B=None, H=None):
    """Upper bound ``max(a^2, b^2)/(2H^2) * ch0`` for torsion-free classes with
    HN factors of twisted slope in ``[a, b]``.

    ``factors`` are the HN factor classes; each must have positive rank and
    twisted slope inside the window.
    """
    a, b = _q(a), _q(b)
    if a > b:
        raise BadWindow(f"window [{a}, {b}] is empty")
    H = cfg.h_class() if H is None else H
    total = Fraction(0)
    for f in factors:
        if f.ch0 <= 0:
            raise BadWindow("HN factors of a torsion-free sheaf have positive rank")
        mu = slope_b(cfg, f, B, H)
        if not a <= mu <= b:
            raise BadWindow(f"factor slope {mu} outside [{a}, {b}]")
        total += f.ch0
    if total <= 0:
        raise BadWindow("total rank must be positive")
    return max(a * a, b * b) / (2 * pair(cfg, H, H)) * total
