"""Smoke tests for the compiled extension, with closed-form cross-checks."""

import cmath
import math

import pytest

import _core as uc


CHEB = uc.preset_map("chebyshev")
ZERO = 0j


def test_presets():
    assert CHEB.degree == 2
    assert CHEB.c == -2 + 0j
    assert uc.preset_map("basilica").c == -1 + 0j
    fe = uc.preset_map("feigenbaum")
    assert fe.c.real == pytest.approx(uc.FEIGENBAUM_PARAMETER, abs=0)
    with pytest.raises(uc.UsageError):
        uc.preset_map("nope")


def test_orbit_and_escape():
    orbit = uc.iterate(CHEB, 0j, 3)
    assert [p.real for p in orbit.points] == [0.0, -2.0, 2.0, 2.0]
    assert orbit.escaped_at is None
    escaping = uc.iterate(uc.UnicriticalMap(2, 3 + 0j), 0j, 10)
    assert escaping.escaped_at == 2


def test_one_step_preimages():
    roots, multiple = uc.preimages_one_step(CHEB, 0j)
    assert not multiple
    assert sorted(r.real for r in roots) == pytest.approx(
        [-math.sqrt(2), math.sqrt(2)]
    )
    roots, multiple = uc.preimages_one_step(CHEB, CHEB.c)
    assert multiple and roots == [0j, 0j]


def test_level_sums_match_chebyshev_closed_forms():
    for n in range(1, 11):
        expected_t1 = 1.0 / (2**n * math.sin(math.pi * 2.0 ** (-n - 1)))
        assert uc.level_sum(CHEB, ZERO, 1.0, n) == pytest.approx(
            expected_t1, rel=1e-11
        )
        assert uc.level_sum(CHEB, ZERO, 2.0, n) == pytest.approx(
            2.0 ** (-n - 1), rel=1e-11
        )


def test_poincare_and_forward_truncations():
    trunc = uc.poincare_truncation(CHEB, ZERO, 2.0, 10)
    assert trunc.partial == pytest.approx(1.5 - 2.0**-11, rel=1e-12)
    assert trunc.level_sums[0] == 1.0
    fwd = uc.forward_series(CHEB, 1.0, 10)
    assert fwd.partial == pytest.approx(2.0 - 2.0**-10, rel=1e-12)
    with pytest.raises(uc.DynamicsError):
        uc.forward_series(uc.UnicriticalMap(2, 3 + 0j), 1.0, 8)


def test_convergence_exponent_threshold():
    est = uc.convergence_exponent(CHEB, ZERO, 14, 0.5, 2.0, tol=1e-4)
    assert abs(est.root - 1.0) <= 0.05
    with pytest.raises(uc.DynamicsError):
        uc.convergence_exponent(CHEB, ZERO, 10, 1.5, 2.0)


def test_min_level_derivative():
    assert uc.min_level_derivative(CHEB, 0) == 1.0
    assert uc.min_level_derivative(CHEB, 1) == pytest.approx(
        2 * math.sqrt(2), rel=1e-12
    )


def test_collision_and_budget_errors():
    with pytest.raises(uc.DynamicsError):
        uc.level_sum(uc.UnicriticalMap(2, 0j), 0j, 1.0, 1)
    with pytest.raises(uc.BudgetError):
        uc.level_sum(CHEB, ZERO, 1.0, 10, budget=100)


def test_disk_components_and_modulus():
    disk = uc.DiskEnclosure(0j, 0.1)
    comps = uc.disk_preimage_components(CHEB, disk)
    assert len(comps) == 2
    assert not comps[0].critical
    assert comps[0].inner_point == pytest.approx(cmath.sqrt(2))
    critical = uc.disk_preimage_components(
        uc.UnicriticalMap(2, 0j), uc.DiskEnclosure(0j, 1.0)
    )
    assert len(critical) == 1 and critical[0].critical
    assert uc.modulus_round(math.e, 1.0) == pytest.approx(1.0)
    with pytest.raises(uc.UsageError):
        uc.modulus_round(1.0, 2.0)


def test_pullback_chain_bounds():
    ref = uc.iterate(CHEB, cmath.sqrt(2), 1)
    chain = uc.pull_back_along_orbit(CHEB, uc.DiskEnclosure(0j, 0.1), ref, 1)
    assert chain.valid
    assert 0 < chain.diam_lower <= chain.diam_upper


def test_feigenbaum_profile_and_staircase():
    fe = uc.preset_map("feigenbaum")
    profile = uc.r_profile(fe, uc.geometric_grid(0.05, 5, 2.0), 512)
    for row in profile.rows:
        assert row.return_times_used
        assert row.r_lo <= row.r_hi
    staircase = uc.return_staircase(fe, 1e-4, 0.5, 1024)
    times = [r.time for r in staircase.returns]
    assert times == sorted(times)
    assert all(t & (t - 1) == 0 for t in times)
    assert all(r.verified for r in staircase.returns)
    ratios = uc.close_return_ratios(fe, staircase, profile, 1.0)
    assert all(math.isfinite(r.ratio) for r in ratios)


def test_children_and_return_stats():
    fe = uc.preset_map("feigenbaum")
    scan = uc.find_children(fe, 0.05, 512, t=1.0)
    assert scan.children and scan.children[0].time == 4
    assert scan.children[0].certainty == uc.ChildCertainty.certain_child
    stats = uc.return_derivative_stats(fe, 0.05, 100, 12)
    assert stats.m == max(stats.m_plus, stats.m_minus)
    cheb_stats = uc.return_derivative_stats(CHEB, 0.05, 100, 12)
    assert math.isinf(cheb_stats.m_plus)
    assert math.isfinite(cheb_stats.m_minus)


def test_threaded_level_sum_is_bit_stable():
    a = uc.level_sum(CHEB, ZERO, 1.3, 12, threads=1)
    b = uc.level_sum(CHEB, ZERO, 1.3, 12, threads=8)
    assert a == b


def test_regen_feigenbaum():
    regen = uc.regen_feigenbaum(max_k=12, tol=1e-12)
    assert len(regen.superstable) == 12
    assert regen.extrapolated == pytest.approx(
        uc.FEIGENBAUM_PARAMETER, abs=1e-12
    )
