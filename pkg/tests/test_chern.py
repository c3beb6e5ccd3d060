import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import config_and_rng, configs
from oracles import ring_ch, ring_coeffs, ring_exp_times
from rootstab import randgen
from rootstab.chern import (
    CRClass,
    NumClass,
    ParabolicData,
    ch2_bound,
    discriminant,
    gerbe_sheaf_class,
    integrality_warnings,
    line_bundle,
    line_bundle_parabolic,
    orbifold_ch,
    point_class,
    sector_pushforward,
    slope_b,
    slope_h,
    tensor_exp,
    twist_b,
    validate_parabolic,
)
from rootstab.errors import (
    BadWindow,
    BTwistWithGerbeComponent,
    RankMismatch,
    SectorCountMismatch,
    SectorOutOfRange,
)
from rootstab.numlat import pair


def cls(cfg, ch0, coords, ch2, cg=0):
    return NumClass(ch0, cfg.divisor(coords, cg), ch2)


def coords(cfg, v):
    return v.coordinates(cfg)


# -- twists ----------------------------------------------------------------------


def test_twist_by_zero_is_identity(p2):
    v = cls(p2, 2, (3,), F(1, 2))
    assert twist_b(p2, v, p2.zero_divisor()) == v


def test_twist_example_against_ring(p2):
    v = cls(p2, 1, (2,), 2)
    got = twist_b(p2, v, p2.divisor((1,)))
    oracle = ring_coeffs(ring_exp_times(-1, ring_ch(1, 2, 2, p2.H2)), p2.H2)
    assert coords(p2, got) == oracle == (1, 1, F(1, 2))


def test_twist_rejects_gerbe_component(conic):
    with pytest.raises(BTwistWithGerbeComponent):
        twist_b(conic, point_class(conic), conic.gerbe())


def test_tensor_exp_gerbe_on_conic(conic):
    got = tensor_exp(conic, cls(conic, 1, (0,), 0), conic.gerbe())
    # the gerbe class is h on this config (C = 2h, n = 2)
    oracle = ring_coeffs(ring_exp_times(1, ring_ch(1, 0, 0, 1)), 1)
    assert coords(conic, got) == oracle == (1, 1, F(1, 2))
    assert got.ch1 == conic.gerbe()


def test_tensor_exp_trivial_cases(conic):
    v = cls(conic, 2, (1,), F(3, 4), cg=1)
    assert tensor_exp(conic, v, conic.zero_divisor()) == v
    pt = point_class(conic)
    assert tensor_exp(conic, pt, conic.divisor((5,), -3)) == pt


# -- discriminant ------------------------------------------------------------------


def test_discriminant_examples(conic, p2):
    assert discriminant(p2, cls(p2, 1, (0,), -1)) == 2
    for x in (F(0), F(7, 3), F(-5)):
        assert discriminant(conic, NumClass(0, conic.c_class(), x)) == 4


@given(config_and_rng())
def test_line_bundles_have_zero_discriminant(data):
    cfg, rng = data
    assert discriminant(cfg, line_bundle(cfg, randgen.random_divisor(rng, cfg))) == 0


# -- gerbe sheaves and pushforward ---------------------------------------------------


def test_gerbe_sheaf_class_examples(conic):
    g2 = pair(conic, conic.gerbe(), conic.gerbe())
    a = gerbe_sheaf_class(conic, 0, 1, 0)
    assert coords(conic, a) == coords(conic, NumClass(0, conic.gerbe(), F(-1, 2) * g2))
    b = gerbe_sheaf_class(conic, 1, 2, 3)
    assert coords(conic, b) == (0, 2, 2 * F(-3, 2) * g2 + F(3, 2)) == (0, 2, F(-3, 2))
    assert gerbe_sheaf_class(conic, 1, 0, 0).is_zero(conic)


def test_gerbe_sheaf_class_range(conic):
    with pytest.raises(SectorOutOfRange):
        gerbe_sheaf_class(conic, 2, 1, 0)
    with pytest.raises(SectorOutOfRange):
        gerbe_sheaf_class(conic, -1, 1, 0)


def test_pushforward_of_structure_sheaf(quadric):
    o = cls(quadric, 1, (0, 0), 0)
    assert coords(quadric, sector_pushforward(quadric, ParabolicData([o] * 3))) == (1, 0, 0, 0)


def test_pushforward_gerbe_line_bundle_on_conic(conic):
    e0 = cls(conic, 1, (0,), 0)
    e1 = line_bundle(conic, conic.c_class())
    assert coords(conic, e1) == (1, 2, 2)
    got = sector_pushforward(conic, ParabolicData([e0, e1]))
    oracle = ring_coeffs(ring_exp_times(1, ring_ch(1, 0, 0, 1)), 1)
    assert coords(conic, got) == oracle


def test_pushforward_equal_sectors_n3():
    from rootstab.numlat import build_config

    cfg = build_config({"rho": 1, "gram": [[1]], "H": [1], "C": [2], "n": 3})
    e = cls(cfg, 2, (1,), 0)
    assert coords(cfg, sector_pushforward(cfg, ParabolicData([e] * 3))) == (2, 1, 0)


def test_pushforward_rank_mismatch(conic):
    with pytest.raises(RankMismatch):
        sector_pushforward(conic, ParabolicData([cls(conic, 1, (0,), 0), cls(conic, 2, (0,), 0)]))
    with pytest.raises(SectorCountMismatch):
        sector_pushforward(conic, ParabolicData([cls(conic, 1, (0,), 0)]))


def test_orbifold_ch(conic, p2):
    o = cls(conic, 1, (0,), 0)
    crv = orbifold_ch(conic, o, [(0, 0)])
    assert crv.sectors == ((0, 0),)
    g = gerbe_sheaf_class(conic, 1, 2, 3)
    assert orbifold_ch(conic, g, [(2, 3)]) == CRClass(g, ((2, 3),))
    assert orbifold_ch(p2, cls(p2, 1, (0,), 0), []).sectors == ()
    with pytest.raises(SectorCountMismatch):
        orbifold_ch(conic, o, [])


def test_validate_parabolic_examples():
    from rootstab.numlat import build_config

    cfg4 = build_config({"rho": 1, "gram": [[1]], "H": [1], "C": [1], "n": 4})
    e3 = cls(cfg4, 3, (0,), 0)
    ok = ParabolicData([e3] * 4, {(0, 1): 1, (0, 2): 2, (0, 3): 3})
    assert validate_parabolic(cfg4, ok) == []

    cfg3 = build_config({"rho": 1, "gram": [[1]], "H": [1], "C": [1], "n": 3})
    e2 = cls(cfg3, 2, (0,), 0)
    too_big = validate_parabolic(cfg3, ParabolicData([e2] * 3, {(0, 1): 1, (0, 2): 3}))
    assert any(p.startswith("r_0,2 = 3 > ch0") for p in too_big)
    bad_chain = validate_parabolic(cfg3, ParabolicData([e2] * 3, {(0, 1): 2, (0, 2): 1}))
    assert any(p.startswith("chain not monotone") for p in bad_chain)


def test_integrality_warnings(conic):
    assert integrality_warnings(conic, cls(conic, 1, (0,), F(1, 8))) == []
    assert integrality_warnings(conic, cls(conic, 1, (0,), F(1, 9)))


# -- slopes and the ch2 bound ---------------------------------------------------------


def test_slopes(conic, p2):
    assert slope_h(conic, NumClass(0, conic.c_class(), 0)) == float("inf")
    assert slope_b(p2, cls(p2, 2, (3,), 0), p2.divisor((1,))) == F(1, 2)
    assert slope_b(conic, gerbe_sheaf_class(conic, 0, 1, 0)) == float("inf")


def test_ch2_bound_examples(p2):
    assert ch2_bound(p2, [cls(p2, 1, (0,), 0)], 0, 0) == 0
    # two factors of slopes -1 and 3, rank 1 each
    factors = [cls(p2, 1, (-1,), 0), cls(p2, 1, (3,), 0)]
    assert ch2_bound(p2, factors, -1, 3) == F(max(1, 9), 2) * 2
    o3 = line_bundle(p2, p2.divisor((3,)))
    assert o3.ch2 == F(9, 2) == ch2_bound(p2, [o3], 3, 3)


def test_ch2_bound_errors(p2):
    with pytest.raises(BadWindow):
        ch2_bound(p2, [cls(p2, 1, (0,), 0)], 1, 0)
    with pytest.raises(BadWindow):
        ch2_bound(p2, [cls(p2, 1, (5,), 0)], 0, 1)
    with pytest.raises(BadWindow):
        ch2_bound(p2, [], 0, 1)


# -- invariants -------------------------------------------------------------------------


@given(configs())
def test_chlink_round_trip(cfg):
    for m in range(cfg.n):
        got = sector_pushforward(cfg, line_bundle_parabolic(cfg, m))
        want = tensor_exp(cfg, NumClass(1, cfg.zero_divisor(), 0), cfg.gerbe() * m)
        assert coords(cfg, got) == coords(cfg, want)


@given(config_and_rng())
def test_twist_commutes_with_pushforward(data):
    cfg, rng = data
    p = randgen.random_parabolic(rng, cfg)
    B = randgen.random_b(rng, cfg)
    lhs = twist_b(cfg, sector_pushforward(cfg, p), B)
    rhs = sector_pushforward(cfg, ParabolicData([twist_b(cfg, e, B) for e in p.sector_classes]))
    assert coords(cfg, lhs) == coords(cfg, rhs)


@given(config_and_rng())
def test_delta_invariant_under_twist(data):
    cfg, rng = data
    v = randgen.random_class(rng, cfg)
    D = randgen.random_divisor(rng, cfg, with_gerbe=False)
    assert discriminant(cfg, tensor_exp(cfg, v, D)) == discriminant(cfg, v)


@given(config_and_rng())
def test_tensor_exp_group_action(data):
    cfg, rng = data
    v = randgen.random_class(rng, cfg)
    d1, d2 = randgen.random_divisor(rng, cfg), randgen.random_divisor(rng, cfg)
    assert coords(cfg, tensor_exp(cfg, tensor_exp(cfg, v, d1), d2)) == coords(cfg, tensor_exp(cfg, v, d1 + d2))


@given(config_and_rng())
def test_twist_group_law(data):
    cfg, rng = data
    v = randgen.random_class(rng, cfg)
    b1, b2 = randgen.random_b(rng, cfg), randgen.random_b(rng, cfg)
    assert coords(cfg, twist_b(cfg, twist_b(cfg, v, b1), b2)) == coords(cfg, twist_b(cfg, v, b1 + b2))


@given(config_and_rng())
def test_pushforward_keeps_rank(data):
    cfg, rng = data
    p = randgen.random_parabolic(rng, cfg)
    assert sector_pushforward(cfg, p).ch0 == p.sector_classes[0].ch0


def test_ring_oracle_checks_random_twists():
    from rootstab.numlat import build_config

    rng = random.Random(7)
    for _ in range(30):
        h2 = rng.randint(1, 5)
        cfg = build_config({"rho": 1, "gram": [[h2]], "H": [1], "C": [1], "n": 1})
        v = cls(cfg, rng.randint(0, 3), (F(rng.randint(-4, 4), 2),), F(rng.randint(-9, 9), 4))
        b = F(rng.randint(-6, 6), 3)
        got = twist_b(cfg, v, cfg.divisor((b,)))
        oracle = ring_coeffs(ring_exp_times(-b, ring_ch(v.ch0, v.ch1.coords[0], v.ch2, h2)), h2)
        assert coords(cfg, got) == oracle
