"""Cross-module invariant suite behind ``rootstab verify``.

Each check draws random inputs from a seeded generator, runs ``trials``
instances and records the first counterexample it meets.  A failing check is
a result, not an exception: the suite always runs to the end.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, randgen
from .chern import (
    CRClass,
    NumClass,
    ParabolicData,
    discriminant,
    line_bundle_parabolic,
    point_class,
    sector_pushforward,
    tensor_exp,
    twist_b,
)
from .grammar import bundled_fixtures, emit_config, fixture_text, load_fixture, parse_config_text
from .numlat import orthogonal_complement_form, pair, signature
from .stab import (
    ChargeParams,
    HNData,
    Ordering,
    charge,
    large_volume_compare,
    phase_compare,
    sigma_slope,
    slice_hn,
)
from .support import (
    Lattice,
    KernelVerdict,
    cauchy_check,
    delta_form,
    explicit_constants,
    kernel_form_check,
    norm_b_transform,
    support_ratio,
)
from .walls import (
    SearchBounds,
    WallKind,
    destabilizer_candidates,
    example_p_report,
    on_wall,
    passes_filters,
    sample_curve,
    wall_locus,
)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    module: str
    passed: bool
    trials: int
    detail: str = ""


class _Fail(Exception):
    pass


def _require(cond, msg):
    if not cond:
        raise _Fail(msg)


def _configs(rng, base, count):
    return list(base) + [randgen.random_config(rng) for _ in range(count)]


# -- numlat --------------------------------------------------------------------


def check_pair_bilinear(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        a, b, c = (randgen.random_divisor(rng, cfg) for _ in range(3))
        k = randgen.rand_frac(rng)
        _require(pair(cfg, a, b) == pair(cfg, b, a), f"asymmetric on {a}, {b}")
        _require(pair(cfg, a * k + c, b) == k * pair(cfg, a, b) + pair(cfg, c, b), "not linear")
    return trials


def check_h_perp_negative(rng, cfgs, trials):
    for cfg in cfgs:
        form, basis = orthogonal_complement_form(cfg)
        if basis:
            _require(signature(form) == (0, cfg.rho - 1, 0), f"H-perp not negative definite on {cfg.name}")
    return len(cfgs)


def check_gerbe_relation(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        a = randgen.rand_frac(rng)
        d = randgen.random_divisor(rng, cfg)
        lhs = pair(cfg, cfg.divisor(cg=a), d)
        _require(lhs == a / cfg.n * pair(cfg, cfg.c_class(), d), "gerbe class is not C/n numerically")
    return trials


# -- chern ---------------------------------------------------------------------


def check_chlink_roundtrip(rng, cfgs, trials):
    count = 0
    for cfg in cfgs:
        for m in range(cfg.n):
            got = sector_pushforward(cfg, line_bundle_parabolic(cfg, m))
            want = tensor_exp(cfg, NumClass(1, cfg.zero_divisor(), 0), cfg.gerbe() * m)
            _require(got.coordinates(cfg) == want.coordinates(cfg), f"O({m}Cg) on {cfg.name}")
            count += 1
    return count


def check_twisted_chlink(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        p = randgen.random_parabolic(rng, cfg)
        B = randgen.random_b(rng, cfg)
        lhs = twist_b(cfg, sector_pushforward(cfg, p), B)
        rhs = sector_pushforward(cfg, ParabolicData(tuple(twist_b(cfg, e, B) for e in p.sector_classes)))
        _require(lhs.coordinates(cfg) == rhs.coordinates(cfg), f"twist does not commute on {cfg.name}")
    return trials


def check_delta_twist(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        v = randgen.random_class(rng, cfg)
        D = randgen.random_divisor(rng, cfg, with_gerbe=False)
        _require(discriminant(cfg, tensor_exp(cfg, v, D)) == discriminant(cfg, v), "Delta changed under twist")
    return trials


def check_tensor_action(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        v = randgen.random_class(rng, cfg)
        D1, D2 = randgen.random_divisor(rng, cfg), randgen.random_divisor(rng, cfg)
        lhs = tensor_exp(cfg, tensor_exp(cfg, v, D1), D2)
        _require(lhs.coordinates(cfg) == tensor_exp(cfg, v, D1 + D2).coordinates(cfg), "not a group action")
    return trials


def check_pushforward_rank(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        p = randgen.random_parabolic(rng, cfg)
        _require(sector_pushforward(cfg, p).ch0 == p.sector_classes[0].ch0, "rank not preserved")
    return trials


# -- stab ----------------------------------------------------------------------


def _params(rng, cfg, t=None):
    return ChargeParams.of(cfg, t=t, B=randgen.random_b(rng, cfg))


def check_charge_linear(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        p = _params(rng, cfg, Fraction(rng.randint(1, 9), rng.randint(1, 3)))
        v, w = randgen.random_class(rng, cfg), randgen.random_class(rng, cfg)
        _require(charge(cfg, v + w, p) == charge(cfg, v, p) + charge(cfg, w, p), "charge not additive")
    return trials


def check_minslope_shift(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        p = _params(rng, cfg)
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        J = NumClass(0, cfg.divisor(cg=c), randgen.rand_frac(rng, 9, 6))
        j, k = rng.randrange(cfg.n), rng.randrange(cfg.n)
        shifted = tensor_exp(cfg, J, cfg.gerbe() * (-(k - j)))
        expect = sigma_slope(cfg, shifted, p) + (k - j) * cfg.gerbe_sq / cfg.h_gerbe
        _require(sigma_slope(cfg, J, p) == expect, f"shift identity fails for j={j}, k={k}")
    return trials


def check_vertical_sign(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        B = randgen.random_b(rng, cfg)
        t = Fraction(rng.randint(1, 12), rng.randint(1, 4))
        # a rational a with a^2 < 2 t H^2
        bound = 2 * t * cfg.H2
        a = Fraction(rng.randint(1, 20), 10)
        while a * a >= bound:
            a /= 2
        v = randgen.random_bogomolov_class(rng, cfg, B, max_slope=a)
        p = ChargeParams.of(cfg, t=t, B=B)
        _require(sigma_slope(cfg, v, p) < 0, f"mu_sigma >= 0 for {v}")
    return trials


def check_phase_preorder(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        p = _params(rng, cfg, Fraction(rng.randint(1, 9), rng.randint(1, 3)))
        zs = []
        while len(zs) < 3:
            v = randgen.random_class(rng, cfg)
            z = charge(cfg, v, p)
            if not z.is_zero() and z.in_sector():
                zs.append(v)
        u, v, w = zs
        uv, vu = phase_compare(cfg, u, v, p), phase_compare(cfg, v, u, p)
        _require(uv.value == -vu.value, "not antisymmetric")
        _require(phase_compare(cfg, u, u * 3, p) is Ordering.EQUAL, "not scale invariant")
        if uv is not Ordering.LESS and phase_compare(cfg, v, w, p) is not Ordering.LESS:
            _require(phase_compare(cfg, u, w, p) is not Ordering.LESS, "not transitive")
    return trials


def _lv_pair(rng, cfg, B):
    v = randgen.random_bogomolov_class(rng, cfg, B)
    if rng.random() < 0.1:
        return v, v * 2  # tie in both coordinates
    return v, randgen.random_bogomolov_class(rng, cfg, B)


def check_large_volume(rng, cfgs, trials):
    t = Fraction(10**6)
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        B = randgen.random_b(rng, cfg)
        v, w = _lv_pair(rng, cfg, B)
        lv = large_volume_compare(cfg, v, w, B, cfg.h_class())
        ph = phase_compare(cfg, v, w, ChargeParams.of(cfg, t=t, B=B))
        _require(lv is ph, f"large volume {lv.name} vs phase {ph.name}")
    return trials


def check_slice_conservation(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        classes = [randgen.random_class(rng, cfg, rank=rng.randint(1, 3)) for _ in range(rng.randint(1, 4))]
        hn = HNData.from_classes(cfg, classes)
        total = hn.total(cfg)
        a = randgen.rand_frac(rng)
        for closed in (True, False):
            geq, lt = slice_hn(cfg, hn, a, closed)
            _require((geq + lt).coordinates(cfg) == total.coordinates(cfg), "slice loses mass")
    return trials


def check_skyscraper_phase(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        p = _params(rng, cfg, rng.choice([None, Fraction(rng.randint(1, 9), rng.randint(1, 4))]))
        for stacky in (False, True):
            z = charge(cfg, point_class(cfg, stacky), p)
            _require(z.im == 0 and z.re < 0, "skyscraper not of phase one")
    return trials


# -- walls ---------------------------------------------------------------------


def check_walls(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        v, w = randgen.random_class(rng, cfg), randgen.random_class(rng, cfg)
        L1, L2 = wall_locus(cfg, v, w), wall_locus(cfg, w, v)
        _require(L1.kind is L2.kind and L1.q == L2.q and L1.vertical == L2.vertical, "wall not symmetric")
        _require(wall_locus(cfg, v, v * 2).kind is WallKind.EVERYWHERE, "v vs 2v not Everywhere")
        if L1.kind is WallKind.CURVE:
            for s, t in sample_curve(L1, 10, rng):
                _require(on_wall(cfg, v, w, s, t), f"sample ({s}, {t}) off the wall")
                _require(not on_wall(cfg, v, w, s, t + Fraction(1, 7)), "shifted sample on the wall")
    return trials


def check_example_p_family(rng, cfgs, trials):
    cfg = load_fixture("p2_conic_n2")
    p = ChargeParams.of(cfg, t=1)
    for d in range(4, 13):
        _require(example_p_report(cfg, d, d * d, p).destabilizes, f"d={d} does not destabilize")
    return 9


def check_destab_monotone(rng, cfgs, trials):
    # the scan is the slow part of the suite, so it gets a few targets only
    count = min(trials, 5)
    small, big = SearchBounds(1, 1, ch2_abs_max=2, ns_abs_max=2), SearchBounds(2, 2, ch2_abs_max=3, ns_abs_max=3)
    for _ in range(count):
        cfg = rng.choice([c for c in cfgs if c.rho == 1] or [load_fixture("p2_conic_n2")])
        p = _params(rng, cfg, Fraction(rng.randint(1, 6)))
        while True:
            v = randgen.random_class(rng, cfg, rank=rng.randint(0, 2))
            if charge(cfg, v, p).im > 0:
                break
        a = destabilizer_candidates(cfg, v, p, small)
        b = set(destabilizer_candidates(cfg, v, p, big))
        _require(set(a) <= b, "enlarging the box lost a candidate")
        _require(all(passes_filters(cfg, v, w, p) for w in b), "candidate fails the filters")
    return count


# -- support -------------------------------------------------------------------


def check_norm_transform(rng, cfgs, trials):
    count = 0
    for n in range(1, 9):
        for _ in range(max(1, trials // 8)):
            cfg = randgen.random_config(rng, n=n)
            _, det = norm_b_transform(cfg, randgen.random_b(rng, cfg))
            _require(det != 0, f"singular transform at n={n}")
            count += 1
    return count


def check_kernel_delta(rng, cfgs, trials):
    for _ in range(trials):
        cfg = randgen.random_config(rng)
        H = cfg.h_class() * Fraction(rng.randint(1, 5), rng.randint(1, 3))
        p = ChargeParams.of(cfg, B=randgen.random_b(rng, cfg), H=H)
        res = kernel_form_check(cfg, delta_form(cfg), p, Lattice.ORDINARY)
        _require(res.verdict is KernelVerdict.NEGATIVE_DEFINITE, f"{res.verdict.value} with witness {res.witness}")
    return trials


def check_cauchy(rng, cfgs, trials):
    for _ in range(trials):
        dim = rng.randint(1, 6)
        m = rng.randint(1, 5)
        vecs = [[randgen.rand_frac(rng) for _ in range(dim)] for _ in range(m)]
        weights = [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(m)]
        _require(cauchy_check(vecs, weights, linalg.identity(dim)), "Cauchy inequality failed")
    return trials


def check_support_monotone(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        p = _params(rng, cfg, Fraction(rng.randint(1, 9), rng.randint(1, 3)))
        classes = []
        while len(classes) < 6:
            v = randgen.random_class(rng, cfg)
            if not charge(cfg, v, p).is_zero():
                classes.append(CRClass(v, ((0, 0),) * (cfg.n - 1)))

        def z_of(crv):
            return charge(cfg, crv.base, p)

        small, _ = support_ratio(cfg, classes[:3], z_of)
        big, _ = support_ratio(cfg, classes, z_of)
        _require(small <= big, "ratio shrank on a larger sample set")
    return trials


def check_constants(rng, cfgs, trials):
    for _ in range(trials):
        cfg = rng.choice(cfgs)
        t = Fraction(rng.randint(1, 12), rng.randint(1, 4))
        a = Fraction(rng.randint(1, 20), 10)
        while a * a >= 2 * t * cfg.H2:
            a /= 2
        k = explicit_constants(cfg, t, a)
        _require(k.a2 > 0 and k.a1 >= 1 and k.M2 > k.a2, f"constants out of range: {k}")
    return trials


# -- cli -----------------------------------------------------------------------


def check_fixture_roundtrip(rng, cfgs, trials):
    names = bundled_fixtures()
    for name in names:
        text = fixture_text(name)
        _require(emit_config(parse_config_text(text)) == text, f"{name} is not in normal form")
    return len(names)


CHECKS = (
    ("numlat", "pair symmetric and bilinear", check_pair_bilinear),
    ("numlat", "H-perp negative definite", check_h_perp_negative),
    ("numlat", "gerbe class is C/n", check_gerbe_relation),
    ("chern", "O(mCg) sector round trip", check_chlink_roundtrip),
    ("chern", "twist commutes with pushforward", check_twisted_chlink),
    ("chern", "Delta invariant under twist", check_delta_twist),
    ("chern", "tensor_exp group action", check_tensor_action),
    ("chern", "pushforward keeps rank", check_pushforward_rank),
    ("stab", "charge additive", check_charge_linear),
    ("stab", "gerbe shift identity", check_minslope_shift),
    ("stab", "vertical wall sign", check_vertical_sign),
    ("stab", "phase order is a preorder", check_phase_preorder),
    ("stab", "large volume agrees at t=10^6", check_large_volume),
    ("stab", "slice conservation", check_slice_conservation),
    ("stab", "skyscrapers have phase one", check_skyscraper_phase),
    ("walls", "wall symmetry and samples", check_walls),
    ("walls", "inclusion destabilizes for 4<=d<=12", check_example_p_family),
    ("walls", "destabilizer box monotone", check_destab_monotone),
    ("support", "normB transform invertible", check_norm_transform),
    ("support", "Delta negative definite on ker Z", check_kernel_delta),
    ("support", "Cauchy inequality", check_cauchy),
    ("support", "support ratio monotone", check_support_monotone),
    ("support", "constants in range", check_constants),
    ("cli", "fixtures round trip", check_fixture_roundtrip),
)


def run_suite(cfg=None, trials=50, seed=0, random_configs=10):
    """Run every check on the bundled fixtures (plus ``cfg`` and random configs)."""
    rng = random.Random(seed)
    base = [load_fixture(name) for name in bundled_fixtures()]
    if cfg is not None:
        base.insert(0, cfg)
    cfgs = _configs(rng, base, random_configs)
    results = []
    for module, name, fn in CHECKS:
        try:
            count = fn(rng, cfgs, trials)
            passed, detail = True, ""
        except _Fail as exc:
            count, passed, detail = 0, False, str(exc)
        except Exception as exc:  # a crash is a failure of that property
            count, passed, detail = 0, False, f"{type(exc).__name__}: {exc}"
        results.append(PropertyResult(name, module, passed, count, detail))
    return results
