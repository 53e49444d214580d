import numpy as np
import pytest

from hyperbola_coeffs.bounds import fs_bound, fs_thresholds
from hyperbola_coeffs.classes import ClassParams, Kind, k_extremal, member_from_schwarz, phi_extremal
from hyperbola_coeffs.errors import ConfigInvalid, ParamOutOfDisk, ParameterError, XOutOfRange
from hyperbola_coeffs.functionals import coefficient, fekete_szego, fekete_szego_inverse, fekete_szego_reciprocal, hankel
from hyperbola_coeffs.search import (
    CampaignConfig,
    FunctionalSpec,
    SchwarzPrefix,
    batch_blaschke_coefficients,
    blaschke_member,
    golden_section_max,
    growth_sequence,
    is_non_increasing,
    prefix_functional,
    rotation_family,
    run_campaign,
    run_grid_point,
)

S_GRID = tuple(round(0.1 * i, 1) for i in range(1, 11))


def random_prefix(rng):
    r = np.sqrt(rng.random(3))
    t = 2 * np.pi * rng.random(3)
    return SchwarzPrefix(*(r * np.exp(1j * t)))


def test_prefix_invariants():
    p = SchwarzPrefix(0.3 + 0.4j, 0.5j, -0.2)
    m = 1 - abs(p.w1) ** 2
    assert p.w2 == pytest.approx(0.5j * m)
    assert p.w3 == pytest.approx(m * 0.75 * -0.2 - p.w1.conjugate() * m * (0.5j) ** 2)
    with pytest.raises(ParamOutOfDisk):
        SchwarzPrefix(1.1)


def test_prefix_real_w1_matches_squared_form():
    p = SchwarzPrefix(0.6, 0.3 - 0.1j, 0.2j)
    assert p.w2 == pytest.approx(p.xi * (1 - 0.36))
    assert p.w3 == pytest.approx((1 - 0.36) * (1 - abs(p.xi) ** 2) * p.zeta - 0.6 * (1 - 0.36) * p.xi**2)


def test_omega_jet_matches_prefix_and_is_schwarz():
    rng = np.random.default_rng(30)
    for _ in range(50):
        p = random_prefix(rng)
        om = p.omega_jet(16).coeffs
        assert om[0] == 0
        assert abs(om[1] - p.w1) < 1e-14 and abs(om[2] - p.w2) < 1e-14 and abs(om[3] - p.w3) < 1e-13
        # Schwarz functions have sum |w_k|^2 <= 1
        assert np.sum(np.abs(om) ** 2) <= 1 + 1e-12


def test_prefix_functional_examples():
    for s in (0.25, 0.5, 1.0):
        p = SchwarzPrefix(0, 1, 0)
        assert prefix_functional("starlike", s, p, FunctionalSpec("coeff", n=3)) == pytest.approx(s / 2)
        assert prefix_functional("starlike", s, p, FunctionalSpec("hankel22")) == pytest.approx(s * s / 4)
        p = SchwarzPrefix(1, 0.7j, 0.2)
        assert p.w2 == 0 and p.w3 == 0
        assert prefix_functional("starlike", s, p, FunctionalSpec("coeff", n=2)) == pytest.approx(s)
        assert prefix_functional("starlike", s, p, FunctionalSpec("coeff", n=3)) == pytest.approx(s * (3 * s + 1) / 4)
    zero = SchwarzPrefix(0, 0, 0)
    for spec in (FunctionalSpec("fs", lam=0.3), FunctionalSpec("hankel22"), FunctionalSpec("coeff", n=4),
                 FunctionalSpec("fs", "inv", lam=2.0)):
        assert prefix_functional("convex", 0.5, zero, spec) == 0


def test_functional_spec_validation():
    with pytest.raises(ParameterError):
        FunctionalSpec("fs")
    with pytest.raises(ParameterError):
        FunctionalSpec("coeff", n=1)
    with pytest.raises(ParameterError):
        FunctionalSpec("bogus")


def test_prefix_functional_matches_series_pipeline():
    rng = np.random.default_rng(31)
    for i in range(1000):
        p = random_prefix(rng)
        s = float(rng.uniform(0.01, 1))
        kind = Kind.STARLIKE if i % 2 else Kind.CONVEX
        lam = float(rng.uniform(-2, 4))
        m = member_from_schwarz(kind, s, p.omega_jet(8), 8)
        checks = [
            (FunctionalSpec("fs", "f", lam), fekete_szego(m, lam).value),
            (FunctionalSpec("fs", "zf", lam), fekete_szego_reciprocal(m, lam).value),
            (FunctionalSpec("fs", "inv", lam), fekete_szego_inverse(m, lam).value),
            (FunctionalSpec("hankel22"), hankel(m, 2, 2).value),
            (FunctionalSpec("coeff", n=4), abs(coefficient(m, 4))),
        ]
        for spec, expected in checks:
            assert abs(prefix_functional(kind, s, p, spec) - expected) < 1e-9


@pytest.mark.parametrize("s", [0.2, 0.5, 1.0])
def test_rotation_family_reductions(s):
    assert rotation_family("g_x", s, 0, 16).f.max_abs_diff(phi_extremal(ClassParams(s, 2, 16)).f) < 1e-12
    assert rotation_family("G_x", s, 0, 16).f.max_abs_diff(k_extremal(ClassParams(s, 2, 16)).f) < 1e-12
    assert rotation_family("F_x", s, 0.3, 8).kind is Kind.CONVEX


@pytest.mark.parametrize("s", [0.1, 0.5, 1.0])
@pytest.mark.parametrize("x", [0, 0.25, 0.5, 0.75, 1])
def test_rotation_family_equality_cases(s, x):
    lam_hi = (3 * s + 3) / (4 * s)
    lam_lo = (3 * s - 1) / (4 * s)
    assert abs(fekete_szego(rotation_family("f_x", s, x, 8), lam_hi).value - s / 2) < 1e-12
    assert abs(fekete_szego(rotation_family("g_x", s, x, 8), lam_lo).value - s / 2) < 1e-12
    lo, hi = fs_thresholds("convex", "f", s)
    assert abs(fekete_szego(rotation_family("F_x", s, x, 8), hi).value - s / 6) < 1e-12
    assert abs(fekete_szego(rotation_family("G_x", s, x, 8), lo).value - s / 6) < 1e-12


def test_rotation_family_errors():
    with pytest.raises(XOutOfRange):
        rotation_family("f_x", 0.5, 1.5)
    with pytest.raises(ParameterError):
        rotation_family("h_x", 0.5, 0.5)


def test_blaschke_member_examples():
    for s in (0.3, 1.0):
        m = blaschke_member("starlike", s, 1, (), 16)
        assert m.f.max_abs_diff(phi_extremal(ClassParams(s, 1, 16)).f) < 1e-12
        assert blaschke_member("starlike", s, 1, [0.3], 8).f.coeffs[2] == pytest.approx(0.3 * s)
        m = blaschke_member("convex", s, 0, [0.5j], 8)
        np.testing.assert_array_equal(m.f.coeffs[2:], 0)
    with pytest.raises(ParamOutOfDisk):
        blaschke_member("starlike", 0.5, 1, [1.0], 8)
    with pytest.raises(ParamOutOfDisk):
        blaschke_member("starlike", 0.5, 1.2, [], 8)
    with pytest.raises(ParamOutOfDisk):
        blaschke_member("starlike", 0.5, 1, [0.1] * 4, 8)


def test_batch_blaschke_matches_series():
    rng = np.random.default_rng(32)
    B = 40
    c = np.sqrt(rng.random(B)) * np.exp(2j * np.pi * rng.random(B))
    zeros = 0.95 * np.sqrt(rng.random((B, 3))) * np.exp(2j * np.pi * rng.random((B, 3)))
    counts = rng.integers(0, 4, B)
    active = np.arange(3)[None, :] < counts[:, None]
    for kind in ("starlike", "convex"):
        batch = batch_blaschke_coefficients(kind, 0.4, c, zeros, active, 10)
        for b in range(B):
            m = blaschke_member(kind, 0.4, c[b], list(zeros[b, : counts[b]]), 10)
            assert np.max(np.abs(batch[b] - m.f.coeffs)) < 1e-12


def test_golden_section_max():
    x, v = golden_section_max(lambda t: -(t - 0.3) ** 2, -1, 2, 60)
    assert abs(x - 0.3) < 1e-8 and v <= 0


def test_campaign_hankel_starlike_example():
    cfg = CampaignConfig("hankel22", "starlike", (0.5,), samples=10_000, seed=1)
    rec = run_campaign(cfg).records[0]
    assert 0.0625 - 1e-3 <= rec.sup_found <= 0.0625 + 1e-9
    assert rec.attained and not rec.violated
    assert rec.gap == pytest.approx(rec.bound.value - rec.sup_found)


def test_campaign_fs_examples():
    cfg = CampaignConfig("fs", "starlike", (0.5,), lambda_grid=(1.0,), samples=2000, seed=2)
    rec = run_campaign(cfg).records[0]
    assert rec.sup_found == pytest.approx(0.25, abs=1e-12)
    assert rec.argmax_source == "candidate:Phi_{s,2}"
    cfg = CampaignConfig("fs", "convex", (1.0,), lambda_grid=(0.0,), samples=2000, seed=2)
    rec = run_campaign(cfg).records[0]
    assert rec.bound.value == pytest.approx(1 / 3)
    assert rec.attained and not rec.violated


def test_campaign_determinism_and_parallel_equivalence():
    cfg = CampaignConfig("fs", "convex", (0.3, 0.8), target="inv", lambda_grid=(-1.0, 0.5, 2.0),
                         samples=500, refine_steps=10, seed=7)
    a, b = run_campaign(cfg), run_campaign(cfg)
    assert a == b
    assert run_campaign(cfg, workers=2) == a
    assert run_grid_point(cfg, 4) == a.records[4]


def test_seed_changes_search_only():
    base = dict(functional="hankel22", kind="convex", s_grid=(0.6,), samples=300, refine_steps=5)
    a = run_campaign(CampaignConfig(seed=1, **base)).records[0]
    b = run_campaign(CampaignConfig(seed=2, **base)).records[0]
    assert a.candidate_sup == b.candidate_sup
    assert a.search_sup != b.search_sup


@pytest.mark.parametrize("kind,target", [(k, t) for k in ("starlike", "convex") for t in ("f", "zf", "inv")])
def test_candidates_attain_sharp_fs_bounds(kind, target):
    for s in (0.1, 0.5, 1.0):
        lo, hi = fs_thresholds(kind, target, s)
        lams = (lo - 1.5, lo, 0.5 * (lo + hi), hi, hi + 1.5)
        cfg = CampaignConfig("fs", kind, (s,), target=target, lambda_grid=lams, samples=1, refine_steps=0)
        for rec in run_campaign(cfg).records:
            assert abs(rec.candidate_sup - rec.bound.value) < 1e-9
            assert rec.bound.value == fs_bound(kind, target, s, rec.lam).value


def test_candidates_attain_starlike_hankel():
    cfg = CampaignConfig("hankel22", "starlike", S_GRID, samples=1, refine_steps=0)
    for rec in run_campaign(cfg).records:
        assert abs(rec.candidate_sup - rec.bound.value) < 1e-9


def test_coefficient_campaign_small():
    cfg = CampaignConfig("coeff", "starlike", (0.5,), n_grid=(2, 5), samples=300, refine_steps=5, seed=3)
    recs = run_campaign(cfg).records
    assert [r.n for r in recs] == [2, 5]
    assert not any(r.violated for r in recs)
    assert recs[0].attained


@pytest.mark.parametrize("kwargs", [
    dict(functional="nope", kind="starlike", s_grid=(0.5,)),
    dict(functional="fs", kind="starlike", s_grid=(0.5,)),
    dict(functional="hankel22", kind="starlike", s_grid=()),
    dict(functional="hankel22", kind="starlike", s_grid=(1.5,)),
    dict(functional="hankel22", kind="starlike", s_grid=(0.5,), samples=0),
    dict(functional="hankel22", kind="starlike", s_grid=(0.5,), tol_attain=0),
    dict(functional="coeff", kind="starlike", s_grid=(0.5,), n_grid=(1, 2)),
    dict(functional="hankel22", kind="spiral", s_grid=(0.5,)),
])
def test_config_invalid(kwargs):
    with pytest.raises(ConfigInvalid):
        CampaignConfig(**kwargs)


@pytest.mark.parametrize("s", [0.1, 0.25, 0.4])
def test_growth_sequences_non_increasing(s):
    assert is_non_increasing(growth_sequence("starlike", s))
    assert is_non_increasing(growth_sequence("convex", s))
