from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import configs, seeds
from oracles import sympy_signature
from rootstab import linalg, randgen
from rootstab.errors import (
    BadRoot,
    DimensionMismatch,
    NonPositive,
    NonSymmetricGram,
    ValidationError,
    WrongSignature,
)
from rootstab.numlat import build_config, orthogonal_complement_form, pair, signature


def test_conic_config_signature():
    cfg = build_config({"rho": 1, "gram": [[1]], "H": [1], "C": [2], "n": 2})
    assert signature(cfg.gram) == sympy_signature([[1]]) == (1, 0, 0)
    assert cfg.n == 2 and cfg.B == (0,)


def test_quadric_signature_matches_eigenvalues():
    gram = [[0, 1], [1, 0]]
    cfg = build_config({"rho": 2, "gram": gram, "H": [1, 1], "C": [1, 1], "n": 3})
    assert signature(cfg.gram) == sympy_signature(gram) == (1, 1, 0)


def test_negative_definite_rejected_with_signature():
    with pytest.raises(WrongSignature) as exc:
        build_config({"rho": 1, "gram": [[-1]], "H": [1], "C": [1], "n": 1})
    assert exc.value.details["signature"] == (0, 1, 0)


@pytest.mark.parametrize(
    "raw, err",
    [
        ({"rho": 2, "gram": [[1, 2], [0, -1]], "H": [1, 0], "C": [1, 0], "n": 1}, NonSymmetricGram),
        ({"rho": 1, "gram": [[1]], "H": [1], "C": [-1], "n": 2}, NonPositive),
        ({"rho": 2, "gram": [[0, 1], [1, 0]], "H": [1, -1], "C": [1, 1], "n": 2}, NonPositive),
        ({"rho": 1, "gram": [[1]], "H": [1], "C": [1], "n": 0}, BadRoot),
        ({"rho": 1, "gram": [[1]], "H": [1, 2], "C": [1], "n": 2}, DimensionMismatch),
        ({"rho": 1, "gram": [[1]], "C": [1], "n": 2}, ValidationError),
    ],
)
def test_build_config_errors(raw, err):
    with pytest.raises(err):
        build_config(raw)


def test_floats_refused():
    with pytest.raises(ValidationError):
        build_config({"rho": 1, "gram": [[1.5]], "H": [1], "C": [1], "n": 1})


def test_gerbe_pairings_on_conic(conic):
    g = conic.gerbe()
    assert pair(conic, g, g) == 1
    assert pair(conic, conic.h_class(), g) == 1
    assert pair(conic, conic.h_class(), conic.zero_divisor()) == 0


@pytest.mark.parametrize(
    "gram, expected",
    [([[1]], (1, 0, 0)), ([[0, 1], [1, 0]], (1, 1, 0)), ([[0, 0], [0, 0]], (0, 0, 2))],
)
def test_signature_examples(gram, expected):
    assert signature(gram) == expected


def test_signature_needs_symmetry():
    with pytest.raises(NonSymmetricGram):
        signature([[1, 2], [3, 4]])


def test_zero_pivot_congruence():
    # zero diagonal everywhere forces the e_i += e_j move
    gram = [[0, 2, 3], [2, 0, 1], [3, 1, 0]]
    diag, p = linalg.congruence_diagonalize(linalg.frac_matrix(gram))
    back = linalg.matmul(linalg.transpose(p), linalg.matmul(linalg.frac_matrix(gram), p))
    assert all(back[i][j] == (diag[i] if i == j else 0) for i in range(3) for j in range(3))
    assert signature(gram) == sympy_signature(gram)


@given(seeds, st.integers(1, 4))
def test_signature_agrees_with_eigenvalues(seed, size):
    import random

    rng = random.Random(seed)
    a = [[F(rng.randint(-3, 3)) for _ in range(size)] for _ in range(size)]
    sym = [[a[i][j] + a[j][i] for j in range(size)] for i in range(size)]
    assert signature(sym) == sympy_signature([[int(x) for x in row] for row in sym])


@given(configs())
def test_pair_symmetric_bilinear(cfg):
    import random

    rng = random.Random(pair(cfg, cfg.h_class(), cfg.c_class()).numerator)
    a, b, c = (randgen.random_divisor(rng, cfg) for _ in range(3))
    k = randgen.rand_frac(rng)
    assert pair(cfg, a, b) == pair(cfg, b, a)
    assert pair(cfg, a * k + c, b) == k * pair(cfg, a, b) + pair(cfg, c, b)


@given(configs())
def test_h_perp_negative_definite(cfg):
    form, basis = orthogonal_complement_form(cfg)
    assert len(basis) == cfg.rho - 1
    if basis:
        assert signature(form) == (0, cfg.rho - 1, 0)


@given(configs(), st.fractions(min_value=-10, max_value=10, max_denominator=6))
def test_gerbe_relation(cfg, a):
    d = cfg.divisor(tuple(range(1, cfg.rho + 1)))
    assert pair(cfg, cfg.divisor(cg=a), d) == a / cfg.n * pair(cfg, cfg.c_class(), d)


def test_canonical_and_fold(conic):
    d = conic.divisor((4,), -1)
    assert conic.canonical(d) == (3,)
    assert conic.num_equal(d, conic.divisor((3,)))
    assert conic.fold(d) == conic.divisor((3,))
