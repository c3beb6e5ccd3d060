"""Support-property machinery on the Chen-Ruan lattice.

Coordinates of a Chen-Ruan class are ordered ``(ch0, ch1_1..ch1_rho, ch2,
r_1, d_1, ..., r_{n-1}, d_{n-1})``; the ordinary lattice uses the first
``2 + rho`` of them.  The norm is the squared Euclidean norm in these
coordinates; ratios are kept squared so everything stays rational.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    BTwistWithGerbeComponent,
    DimensionMismatch,
    NotPositiveDefinite,
    SingularTransform,
    WindowViolated,
    ZeroChargeSample,
)
from .numlat import _q, pair


class Lattice(enum.Enum):
    ORDINARY = "ordinary"
    CR = "cr"


def lattice_dim(cfg, lattice):
    base = 2 + cfg.rho
    return base if lattice is Lattice.ORDINARY else base + 2 * (cfg.n - 1)


@dataclass(frozen=True)
class QuadraticForm:
    gram: tuple

    def __post_init__(self):
        g = linalg.frac_matrix(self.gram)
        if not linalg.is_symmetric(g):
            raise DimensionMismatch("quadratic form must be a symmetric square matrix")
        object.__setattr__(self, "gram", tuple(tuple(r) for r in g))

    @property
    def dim(self):
        return len(self.gram)

    def __call__(self, x):
        return linalg.bilinear(self.gram, x, x)


def delta_form(cfg, lattice=Lattice.ORDINARY):
    """``ch1^2 - 2 ch0 ch2``, extended by zero on sector coordinates."""
    dim = lattice_dim(cfg, lattice)
    g = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(cfg.rho):
        for j in range(cfg.rho):
            g[1 + i][1 + j] = cfg.gram[i][j]
    c2 = 1 + cfg.rho
    g[0][c2] = g[c2][0] = Fraction(-1)
    return QuadraticForm(g)


def euclidean_form(dim, sign=1):
    return QuadraticForm([[Fraction(sign * (i == j)) for j in range(dim)] for i in range(dim)])


def cr_norm_sq(crv, cfg):
    return sum((x * x for x in crv.coordinates(cfg)), Fraction(0))


def charge_functionals(cfg, p, lattice=Lattice.ORDINARY, eps=None, eps_prime=None):
    """Rows ``(re, im)`` with ``Z(x) = re.x + i im.x`` on lattice coordinates."""
    B = p.B
    Bc = cfg.canonical(B)
    Hc = cfg.canonical(p.H)
    t = p.t_value(cfg)
    b2 = pair(cfg, B, B)
    gB = linalg.matvec(cfg.gram, Bc)
    gH = linalg.matvec(cfg.gram, Hc)
    # Re = -ch2 + B.ch1 + (t - B^2/2) ch0 ;  Im = H.ch1 - (H.B) ch0
    re = [t - b2 / 2, *gB, Fraction(-1)]
    im = [-pair(cfg, p.H, B), *gH, Fraction(0)]
    if lattice is Lattice.CR:
        k = cfg.n - 1
        eps = [Fraction(0)] * k if eps is None else [_q(e) for e in eps]
        eps_prime = [Fraction(0)] * k if eps_prime is None else [_q(e) for e in eps_prime]
        if len(eps) != k or len(eps_prime) != k:
            raise DimensionMismatch(f"deformation vectors must have length {k}")
        hg = pair(cfg, p.H, cfg.gerbe())
        for e, ep in zip(eps, eps_prime):
            re += [Fraction(0), -e]
            im += [ep * hg, Fraction(0)]
    return re, im


def norm_b_transform(cfg, B):
    """Matrix taking (ch(E), (r_k, d_k)) coordinates to (ch^B(E), ch^B(G_k rho_k)) coordinates.

    Each sector block sends ``(r, d)`` to the gerbe coefficient and ch2 of the
    B-twisted class of ``G rho_k``.  Returns ``(matrix, determinant)``.
    """
    if B.cg != 0:
        raise BTwistWithGerbeComponent("B must lie in NS(X)")
    rho, n = cfg.rho, cfg.n
    dim = lattice_dim(cfg, Lattice.CR)
    T = [[Fraction(0)] * dim for _ in range(dim)]
    Bc = cfg.canonical(B)
    gB = linalg.matvec(cfg.gram, Bc)
    b2 = pair(cfg, B, B)
    c2 = 1 + rho
    # e^{-B}: ch0 -> ch0, ch1 - B ch0, ch2 - B.ch1 + B^2/2 ch0
    T[0][0] = Fraction(1)
    for i in range(rho):
        T[1 + i][1 + i] = Fraction(1)
        T[1 + i][0] = -Bc[i]
    T[c2][0] = b2 / 2
    for j in range(rho):
        T[c2][1 + j] = -gB[j]
    T[c2][c2] = Fraction(1)
    bg = pair(cfg, B, cfg.gerbe())
    for k in range(1, n):
        i = 2 + rho + 2 * (k - 1)
        T[i][i] = Fraction(1)
        T[i + 1][i] = Fraction(-2 * k - 1, 2) * cfg.gerbe_sq - bg
        T[i + 1][i + 1] = Fraction(1, n)
    d = linalg.det(T)
    if d == 0:
        raise SingularTransform("coordinate change is singular")
    return T, d


def support_ratio(cfg, samples, z_of):
    """``max ||v||^2 / |Z(v)|^2`` over CR classes, with the maximizing sample.

    ``z_of`` maps a CR class to its :class:`~rootstab.stab.Charge`.  An empty
    sample list gives ``(0, None)``.
    """
    best, arg = Fraction(0), None
    for v in samples:
        z = z_of(v)
        if z.is_zero():
            raise ZeroChargeSample(f"sample {v!r} has zero charge", sample=v)
        ratio = cr_norm_sq(v, cfg) / z.abs2()
        if arg is None or ratio > best:
            best, arg = ratio, v
    return best, arg


class KernelVerdict(enum.Enum):
    NEGATIVE_DEFINITE = "NegativeDefinite"
    INDEFINITE = "Indefinite"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class KernelResult:
    verdict: KernelVerdict
    witness: tuple = None
    kernel_basis: tuple = ()
    inertia: tuple = None


def kernel_form_check(cfg, Q, p, lattice=Lattice.ORDINARY, eps=None, eps_prime=None):
    """Classify ``Q`` restricted to ``ker Z`` with an explicit witness when it fails."""
    dim = lattice_dim(cfg, lattice)
    if Q.dim != dim:
        raise DimensionMismatch(f"form has dimension {Q.dim}, lattice has {dim}")
    re, im = charge_functionals(cfg, p, lattice, eps, eps_prime)
    basis = linalg.nullspace([re, im], dim)
    if not basis:
        return KernelResult(KernelVerdict.NEGATIVE_DEFINITE, None, (), (0, 0, 0))
    restricted = [[linalg.bilinear(Q.gram, u, v) for v in basis] for u in basis]
    diag, P = linalg.congruence_diagonalize(restricted)
    inert = (sum(d > 0 for d in diag), sum(d < 0 for d in diag), sum(d == 0 for d in diag))
    kb = tuple(tuple(b) for b in basis)
    if inert[1] == len(diag):
        return KernelResult(KernelVerdict.NEGATIVE_DEFINITE, None, kb, inert)

    def lift(col):
        coeffs = [row[col] for row in P]
        return tuple(sum((c * b[i] for c, b in zip(coeffs, basis)), Fraction(0)) for i in range(dim))

    pos = [i for i, d in enumerate(diag) if d > 0]
    if pos:
        return KernelResult(KernelVerdict.INDEFINITE, lift(pos[0]), kb, inert)
    zero = next(i for i, d in enumerate(diag) if d == 0)
    return KernelResult(KernelVerdict.DEGENERATE, lift(zero), kb, inert)


def cauchy_check(vectors, weights, gram):
    """Exact check of ``(sum a_j v_j)^2 <= (sum a_j^2)(sum v_j^2)``."""
    g = linalg.frac_matrix(gram)
    pos, neg, zero = linalg.inertia(g)
    if neg or zero:
        raise NotPositiveDefinite("inner product must be positive definite")
    weights = [_q(a) for a in weights]
    if any(a <= 0 for a in weights):
        raise ValueError("weights must be positive")
    vectors = [[_q(x) for x in v] for v in vectors]
    total = [sum((a * v[i] for a, v in zip(weights, vectors)), Fraction(0)) for i in range(len(g))]
    lhs = linalg.bilinear(g, total, total)
    rhs = sum((a * a for a in weights), Fraction(0)) * sum((linalg.bilinear(g, v, v) for v in vectors), Fraction(0))
    return lhs <= rhs


@dataclass(frozen=True)
class ConstantsLedger:
    alpha: Fraction
    a2: Fraction
    a1: Fraction
    M2: Fraction
    M7: Fraction
    bC1: Fraction

    def as_dict(self):
        return {"alpha": self.alpha, "a2": self.a2, "a1": self.a1, "M2": self.M2, "M7": self.M7, "bC1": self.bC1}


def explicit_constants(cfg, t, a):
    """Closed-form constants of the support-property argument for ``0 < a < sqrt(2 t H^2)``."""
    t, a = _q(t), _q(a)
    h2 = cfg.H2
    if t <= 0 or a <= 0 or a * a >= 2 * t * h2:
        raise WindowViolated(f"need t > 0 and 0 < a < sqrt(2tH^2); got t={t}, a={a}")
    n = cfg.n
    hg = cfg.h_gerbe
    alpha = (n - 1) * hg
    a2 = 1 / (t - a * a / (2 * h2))
    a1 = max(2 * alpha * alpha / h2 * a2, Fraction(1))
    M2 = a2 + 1 / a
    M7 = max((j - k) * cfg.gerbe_sq / hg for k in range(n) for j in range(k + 1))
    bC1 = Fraction(n - 1, n) * abs(cfg.C2)
    return ConstantsLedger(alpha, a2, a1, M2, M7, bC1)
