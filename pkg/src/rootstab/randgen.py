"""Random valid inputs for property checks.

Everything is driven by a :class:`random.Random` so runs are reproducible
from a seed.  Intersection forms are built as ``P^T diag(p, -q, ...) P`` for
an invertible integer ``P``, which fixes the signature at ``(1, rho - 1)``.
"""

import math
import random
from fractions import Fraction

from . import linalg
from .chern import NumClass, ParabolicData, tensor_exp
from .numlat import build_config, pair


def rand_frac(rng, num=6, den=4):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def _invertible_int_matrix(rng, size, spread=2):
    while True:
        m = [[rng.randint(-spread, spread) for _ in range(size)] for _ in range(size)]
        if linalg.det(m) != 0:
            return m


def random_gram(rng, rho):
    """Return ``(gram, hint)`` where ``hint`` is an integer vector of positive square."""
    diag = [rng.randint(1, 4)] + [-rng.randint(1, 4) for _ in range(rho - 1)]
    d = [[Fraction(diag[i] if i == j else 0) for j in range(rho)] for i in range(rho)]
    if rho == 1:
        return d, [1]
    p = linalg.frac_matrix(_invertible_int_matrix(rng, rho))
    gram = linalg.matmul(linalg.transpose(p), linalg.matmul(d, p))
    # P^{-1} e_1 maps to e_1, so it has square diag[0] > 0; clear denominators
    col = linalg.solve(p, [Fraction(int(i == 0)) for i in range(rho)])
    scale = math.lcm(*(x.denominator for x in col))
    return gram, [int(x * scale) for x in col]


def random_config(rng=None, rho=None, n=None, with_b=True):
    rng = rng or random.Random()
    rho = rng.randint(1, 3) if rho is None else rho
    n = rng.randint(1, 6) if n is None else n
    gram, H = random_gram(rng, rho)
    for _ in range(50):
        trial = [rng.randint(-3, 3) for _ in range(rho)]
        if linalg.bilinear(gram, trial, trial) > 0:
            H = trial
            break
    while True:
        C = [rng.randint(-3, 3) for _ in range(rho)]
        if linalg.bilinear(gram, H, C) > 0:
            break
    B = [rand_frac(rng, 3, 3) for _ in range(rho)] if with_b else [0] * rho
    return build_config({"rho": rho, "gram": gram, "H": H, "C": C, "B": B, "n": n, "name": "random"})


def random_divisor(rng, cfg, with_gerbe=True, spread=4, den=1):
    coords = [Fraction(rng.randint(-spread, spread), rng.randint(1, den)) for _ in range(cfg.rho)]
    cg = rng.randint(-cfg.n, cfg.n) if with_gerbe else 0
    return cfg.divisor(coords, cg)


def random_b(rng, cfg):
    return random_divisor(rng, cfg, with_gerbe=False, spread=3, den=3)


def random_class(rng, cfg, rank=None, with_gerbe=True):
    rank = rng.randint(0, 3) if rank is None else rank
    return NumClass(rank, random_divisor(rng, cfg, with_gerbe), rand_frac(rng, 8, 2 * cfg.n))


def random_parabolic(rng, cfg):
    """Sector classes with a shared positive rank and NS-only first Chern classes."""
    rank = rng.randint(1, 3)
    classes = [random_class(rng, cfg, rank, with_gerbe=False) for _ in range(cfg.n)]
    return ParabolicData(classes)


def random_bogomolov_class(rng, cfg, B, max_slope=None):
    """Positive-rank class with ``Delta >= 0`` and B-twisted slope in ``(0, max_slope]``.

    With ``max_slope`` given, ``ch2^B <= max_slope^2/(2H^2) ch0`` as well.
    """
    r = Fraction(rng.randint(1, 3))
    h = cfg.h_class()
    h2 = cfg.H2
    top = max_slope if max_slope is not None else Fraction(4)
    mu = top * Fraction(rng.randint(1, 12), 12)
    d = random_divisor(rng, cfg, with_gerbe=False, spread=3)
    # move d along H so that H.d / r = mu
    d = d + h * ((mu * r - pair(cfg, h, d)) / h2)
    cap = pair(cfg, d, d) / (2 * r)
    if max_slope is not None:
        cap = min(cap, max_slope * max_slope / (2 * h2) * r)
    ch2 = cap - Fraction(rng.randint(0, 8), rng.randint(1, 4))
    twisted = NumClass(r, d, ch2)
    # undo the B-twist: ch = e^B ch^B
    return tensor_exp(cfg, twisted, B)
