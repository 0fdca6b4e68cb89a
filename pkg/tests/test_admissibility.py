import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kohncoerce import (ExponentSet, NotAdmissible, doubling_constant, hessian_at,
                        kappa_radius_check, laplacian, rho_by_definition, rho_by_poly_formula)
from kohncoerce.admissibility import (ball_sup, comparability_band, doubling_cap,
                                      local_lower_bound, radius_estimate,
                                      radius_function_constant, rho_grid)

from conftest import GAMMA_FIG, TEST_GAMMAS, gammas

G1 = ExponentSet([(1, 0), (0, 1)])
G2 = ExponentSet([(2, 0), (0, 2)])
MIXED = ExponentSet([(1, 1)])


def test_laplacian_examples():
    # φ = |z|²+|w|², Δφ = 8; φ = |zw|², Δφ = 4(|z|²+|w|²)
    assert laplacian(G1, (0.3, -2.0)) == 8.0
    assert laplacian(MIXED, (1, 1)) == pytest.approx(8.0)
    assert laplacian(MIXED, (0, 0)) == 0.0
    assert laplacian(G2, (1j, 2)) == pytest.approx(16 * 5)


@settings(max_examples=40)
@given(gammas, st.floats(-2, 2), st.floats(-2, 2))
def test_laplacian_is_four_traces(gamma, a, b):
    h = hessian_at(gamma, (a, b))
    assert laplacian(gamma, (a, b)) == pytest.approx(4 * (h.h_zz + h.h_ww), rel=1e-12, abs=1e-300)


def test_rho_closed_forms():
    assert rho_by_definition(G1, (0, 0)) == pytest.approx(8 ** -0.5, rel=1e-10)
    assert rho_by_definition(G1, (5, 5)) == pytest.approx(8 ** -0.5, rel=1e-10)
    # sup over B(0, r) of 16(|z|²+|w|²) is 16 r², so 16 r² = r⁻² at r = ½
    assert rho_by_definition(G2, (0, 0)) == pytest.approx(0.5, rel=1e-10)


def test_poly_formula_examples():
    assert rho_by_poly_formula(G1, (1, 2)) == pytest.approx(8 ** -0.5)
    assert rho_by_poly_formula(G2, (0, 0)) == pytest.approx(0.5)
    # at the origin only ∂z∂z̄ Δφ = 4 survives for |zw|²
    assert rho_by_poly_formula(MIXED, (0, 0)) == pytest.approx(4 ** -0.25)
    est = radius_estimate(G2, (0, 0))
    assert est.ratio == pytest.approx(1.0, rel=1e-9)


def test_bisection_meets_its_tolerance():
    p = (0.7, 0.4)
    loose = rho_by_definition(GAMMA_FIG, p, tol=1e-6)
    tight = rho_by_definition(GAMMA_FIG, p, tol=1e-13)
    assert loose == pytest.approx(tight, rel=2e-6)
    # the defining inequality holds just inside ρ and fails just outside
    assert ball_sup(GAMMA_FIG, p, tight * (1 - 1e-9)) <= (tight * (1 - 1e-9)) ** -2
    assert ball_sup(GAMMA_FIG, p, tight * (1 + 1e-9)) > (tight * (1 + 1e-9)) ** -2


@settings(max_examples=30)
@given(gammas, st.floats(0, 1.5), st.floats(0, 1.5), st.floats(1e-3, 2))
def test_ball_sup_monotone_in_radius(gamma, s, t, r):
    assert ball_sup(gamma, (s, t), r) <= ball_sup(gamma, (s, t), 2 * r)
    assert ball_sup(gamma, (s, t), r) >= laplacian(gamma, (s, t))


def test_rho_grid_matches_pointwise():
    s = np.array([0.0, 0.5, 1.0])
    t = np.array([0.2, 0.0, 1.0])
    grid = rho_grid(TEST_GAMMAS[2], s, t, tol=1e-12)
    single = [rho_by_definition(TEST_GAMMAS[2], (a, b)) for a, b in zip(s, t)]
    np.testing.assert_allclose(grid, single, rtol=1e-11)


def test_not_admissible():
    with pytest.raises(NotAdmissible):
        rho_by_definition({(0, 0)}, (1, 1))
    with pytest.raises(NotAdmissible):
        rho_by_poly_formula({(0, 0)}, (1, 1))
    # Δφ of the figure weight is astronomically large at |z| = 10
    with pytest.raises(NotAdmissible):
        rho_by_definition(GAMMA_FIG, (10, 0))
    with pytest.raises(NotAdmissible):
        doubling_constant({(0, 0)})


def test_comparability_is_grid_stable():
    bands = []
    for n in (9, 17):
        g = np.linspace(0.0, 1.0, n)
        S, T = np.meshgrid(g, g)
        bands.append(comparability_band(TEST_GAMMAS[1], S, T))
    (lo1, hi1), (lo2, hi2) = bands
    assert 0 < lo1 <= hi1 < 10
    assert hi2 / lo2 == pytest.approx(hi1 / lo1, rel=0.05)


def test_doubling_examples():
    assert doubling_constant(G1) == pytest.approx(1.0)
    # Δφ = 16 r² around the origin
    assert doubling_constant(G2) == pytest.approx(4.0, rel=1e-9)
    for g in (G1, G2, TEST_GAMMAS[3], GAMMA_FIG):
        assert doubling_constant(g) <= doubling_cap(g)


def test_doubling_is_sample_stable():
    g = ExponentSet([(1, 2), (3, 0), (0, 4), (2, 1)])
    a, b = doubling_constant(g, samples=256), doubling_constant(g, samples=512)
    assert math.isfinite(a) and b == pytest.approx(a, rel=0.05)


def test_local_lower_bound():
    assert local_lower_bound(G1) == pytest.approx(8.0)
    assert local_lower_bound(G2) == pytest.approx(16.0)
    assert local_lower_bound(MIXED) > 0


def test_kappa_examples():
    assert kappa_radius_check(0, 0) == 1.0
    assert kappa_radius_check(1, 0) == pytest.approx(1.5)
    a, b = kappa_radius_check(4, "9/4"), kappa_radius_check(4, "9/4", samples=512)
    assert math.isfinite(a) and b == pytest.approx(a, rel=0.05)
    with pytest.raises(ValueError):
        kappa_radius_check(-1, 0)


def test_radius_function_constant():
    c32 = radius_function_constant(TEST_GAMMAS[1], samples=32)
    c64 = radius_function_constant(TEST_GAMMAS[1], samples=64)
    assert 1.0 <= c32 < 10
    assert c64 == pytest.approx(c32, rel=0.1)
