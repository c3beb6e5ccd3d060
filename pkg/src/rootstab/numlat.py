"""Numerical Néron-Severi lattice of the root stack.

The numerical ring of the root stack is ``Num(X)[Cg, Bmu_n]`` where the gerbe
class ``Cg`` is numerically ``C/n`` and ``Bmu_n`` is ``pt/n``.  A divisor
class is stored as NS(X) coordinates plus a separate coefficient of ``Cg``;
every pairing goes through the canonical value ``coords + (cg/n) * C``.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    BadRoot,
    DimensionMismatch,
    NonPositive,
    NonSymmetricGram,
    ValidationError,
    WrongSignature,
)


def _q(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass integers, Fractions or 'p/q' strings")
    return Fraction(x)


@dataclass(frozen=True)
class DivisorClass:
    coords: tuple
    cg: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_q(x) for x in self.coords))
        object.__setattr__(self, "cg", _q(self.cg))

    def __add__(self, other):
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch("divisor classes of different rank")
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)), self.cg + other.cg)

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.coords), -self.cg)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = _q(c)
        return DivisorClass(tuple(c * a for a in self.coords), c * self.cg)

    __rmul__ = __mul__

    def is_zero_repr(self):
        return self.cg == 0 and not any(self.coords)


@dataclass(frozen=True)
class RootStackConfig:
    rho: int
    gram: tuple
    H: tuple
    C: tuple
    n: int
    B: tuple
    name: str = ""

    # -- constructors for distinguished classes -------------------------
    def divisor(self, coords=None, cg=0):
        if coords is None:
            coords = (0,) * self.rho
        if len(coords) != self.rho:
            raise DimensionMismatch(f"expected {self.rho} NS coordinates, got {len(coords)}")
        return DivisorClass(tuple(coords), cg)

    def zero_divisor(self):
        return self.divisor()

    def h_class(self):
        return self.divisor(self.H)

    def c_class(self):
        return self.divisor(self.C)

    def b_class(self):
        return self.divisor(self.B)

    def gerbe(self):
        """The class of the root gerbe; numerically C/n."""
        return self.divisor(cg=1)

    # -- numerics ----------------------------------------------------------
    def canonical(self, d):
        if len(d.coords) != self.rho:
            raise DimensionMismatch(f"expected {self.rho} NS coordinates, got {len(d.coords)}")
        if d.cg == 0:
            return d.coords
        f = d.cg / self.n
        return tuple(a + f * c for a, c in zip(d.coords, self.C))

    def fold(self, d):
        """Same numerical class with the gerbe coefficient pushed into NS coordinates."""
        return DivisorClass(self.canonical(d), 0)

    def num_equal(self, d1, d2):
        return self.canonical(d1) == self.canonical(d2)

    def pair_vectors(self, u, v):
        return linalg.bilinear(self.gram, u, v)

    @property
    def H2(self):
        return self.pair_vectors(self.H, self.H)

    @property
    def HC(self):
        return self.pair_vectors(self.H, self.C)

    @property
    def C2(self):
        return self.pair_vectors(self.C, self.C)

    @property
    def gerbe_sq(self):
        """Self-intersection of the gerbe class, C^2/n^2."""
        return self.C2 / self.n**2

    @property
    def h_gerbe(self):
        """H . Cg = H.C/n."""
        return self.HC / self.n

    @property
    def sectors(self):
        return self.n - 1


def pair(cfg, d1, d2):
    """Intersection number of two divisor classes."""
    return cfg.pair_vectors(cfg.canonical(d1), cfg.canonical(d2))


def signature(gram):
    """Exact inertia ``(pos, neg, zero)`` of a symmetric rational matrix."""
    g = linalg.frac_matrix(gram)
    if not linalg.is_symmetric(g):
        raise NonSymmetricGram("gram matrix is not symmetric")
    return linalg.inertia(g)


def orthogonal_complement_form(cfg, h=None):
    """Gram matrix of the pairing restricted to ``h^perp`` (exact basis)."""
    h = cfg.H if h is None else h
    row = [cfg.pair_vectors(h, [int(i == j) for i in range(cfg.rho)]) for j in range(cfg.rho)]
    basis = linalg.nullspace([row], cfg.rho)
    return [[cfg.pair_vectors(u, v) for v in basis] for u in basis], basis


def build_config(raw):
    """Validate a raw config mapping and return a :class:`RootStackConfig`.

    Keys: ``rho``, ``gram``, ``H``, ``C``, ``n`` and optional ``B``, ``name``.
    Entries may be ints, Fractions or ``"p/q"`` strings.
    """
    try:
        rho = int(raw["rho"])
        n = int(raw["n"])
        gram = tuple(tuple(_q(x) for x in row) for row in raw["gram"])
        H = tuple(_q(x) for x in raw["H"])
        C = tuple(_q(x) for x in raw["C"])
        B = tuple(_q(x) for x in raw.get("B", [0] * rho))
    except KeyError as exc:
        raise ValidationError(f"missing config key {exc.args[0]!r}") from None
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad config entry: {exc}") from None

    if rho < 1:
        raise ValidationError("rho must be positive")
    if len(gram) != rho or any(len(row) != rho for row in gram):
        raise DimensionMismatch(f"gram must be {rho}x{rho}")
    for label, vec in (("H", H), ("C", C), ("B", B)):
        if len(vec) != rho:
            raise DimensionMismatch(f"{label} must have length {rho}")
    if n < 1:
        raise BadRoot(f"root order must be >= 1, got {n}")

    sig = signature(gram)
    if sig != (1, rho - 1, 0):
        raise WrongSignature(f"intersection form has signature {sig}, expected (1, {rho - 1}, 0)", signature=sig)

    cfg = RootStackConfig(rho=rho, gram=gram, H=H, C=C, n=n, B=B, name=str(raw.get("name", "")))
    if cfg.H2 <= 0:
        raise NonPositive(f"H^2 = {cfg.H2} is not positive")
    if cfg.HC <= 0:
        raise NonPositive(f"H.C = {cfg.HC} is not positive")
    return cfg
