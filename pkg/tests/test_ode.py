import numpy as np
import pytest

from schwym import (SolutionTag, alpha_of, derive_horizon_series,
                    fit_asymptotics, integrate_phi, seed_initial_conditions)
from schwym.ode import profile_residual


def test_closed_form_agreement_monopole(profile_cache):
    prof = profile_cache(-3.0)
    r = np.geomspace(2.0 + 1e-6, 100.0, 400)
    phi, dphi = prof(r)
    assert np.max(np.abs(phi + 1.0 / r**2)) < 1e-8
    assert np.max(np.abs(dphi - 2.0 / r**3)) < 1e-8


def test_closed_form_agreement_dyon(profile_cache):
    prof = profile_cache(-2.0)
    r = np.geomspace(2.0 + 1e-6, 100.0, 400)
    phi, dphi = prof(r)
    assert np.max(np.abs(phi - (0.25 - 1.0 / r))) < 1e-8
    assert np.max(np.abs(dphi - 1.0 / r**2)) < 1e-8


@pytest.mark.parametrize("kappa,tag", [
    (-4.0, SolutionTag.DIVERGENT),
    (-3.5, SolutionTag.DIVERGENT),
    (-3.0, SolutionTag.FINITE_ACTION),
    (-2.5, SolutionTag.FINITE_ACTION),
    (-2.0, SolutionTag.FINITE_ACTION),
    (-1.5, SolutionTag.ALPHA_IMAGINARY),
])
def test_classification(profile_cache, kappa, tag):
    prof = profile_cache(kappa)
    assert prof.classification.tag is tag
    if tag is not SolutionTag.FINITE_ACTION:
        assert prof.classification.witness_r is not None
        assert prof.classification.witness_r > 2.0


def test_residual_along_profile(profile_cache):
    prof = profile_cache(-2.5)
    r = np.geomspace(2.1, 50.0, 100)
    res = profile_residual(prof, r)
    assert np.max(np.abs(res)) < 1e-6  # limited by the finite-difference phi''


def test_seed_validation():
    ser = derive_horizon_series(1.0, -1, -2.5 / 16.0, order=12)
    with pytest.raises(ValueError):
        seed_initial_conditions(ser, 0.0)
    with pytest.raises(ValueError):
        seed_initial_conditions(ser, 0.02)  # > 0.01 m
    low = derive_horizon_series(1.0, -1, -2.5 / 16.0, order=6)
    with pytest.raises(ValueError):
        seed_initial_conditions(low, 1e-6)
    r0, phi0, dphi0 = seed_initial_conditions(ser, 1e-6)
    assert r0 == pytest.approx(2.0 + 1e-6)
    assert phi0 == pytest.approx(-0.25, rel=1e-5)


def test_integrate_validation():
    with pytest.raises(ValueError):
        integrate_phi(1.0, -2.5, tol=1e-4)
    with pytest.raises(ValueError):
        integrate_phi(1.0, -2.5, r_max=2.0)


def test_alpha_of(profile_cache):
    prof = profile_cache(-3.0)
    r = np.geomspace(2.1, 100.0, 50)
    alpha = alpha_of(prof, r)
    np.testing.assert_allclose(alpha, np.sqrt(1.0 - 2.0 / r), atol=1e-7)


def test_alpha_of_raises_past_witness(profile_cache):
    prof = profile_cache(-1.5)
    w = prof.classification.witness_r
    with pytest.raises(ValueError):
        alpha_of(prof, min(1.5 * w, prof.r_max))


def test_fit_asymptotics_dyon_branch(profile_cache):
    prof = profile_cache(-2.5)
    fit = fit_asymptotics(prof)
    assert fit.C_lo < fit.C_kappa <= fit.C_hi
    assert fit.C_hi - fit.C_lo < 1e-4
    assert not fit.monopole_fallback
    assert fit.decay_rate == pytest.approx(2.0 * fit.C_kappa, rel=0.05)
    assert fit.lam is not None


def test_fit_asymptotics_monopole_fallback(profile_cache):
    prof = profile_cache(-3.0)
    fit = fit_asymptotics(prof)
    assert fit.monopole_fallback
    assert fit.C_kappa == 0.0
    assert fit.C_lo < 1e-6 and fit.C_hi > 0.0


def test_fit_asymptotics_rejects_divergent(profile_cache):
    with pytest.raises(ValueError):
        fit_asymptotics(profile_cache(-3.5))


def test_squeeze_bounds_hold(profile_cache):
    # -m/r^2 < phi < 1/(4m) - 1/r along every finite-action profile
    for kappa in (-3.0, -2.5, -2.0):
        prof = profile_cache(kappa)
        r = prof.grid
        assert np.all(prof.phi >= -1.0 / r**2 - 1e-6)
        assert np.all(prof.phi <= 0.25 - 1.0 / r + 1e-6)


def test_large_rmax_runs_fast_and_brackets_tightly():
    # far region beyond the explicit solver's stability limit
    prof = integrate_phi(1.0, -2.0, epsilon=1e-3, r_max=4e6, tol=1e-12)
    assert prof.classification.tag is SolutionTag.FINITE_ACTION
    fit = fit_asymptotics(prof)
    assert fit.C_hi - fit.C_lo <= 2.5e-7 * (1.0 + 1e-9)
    assert abs((fit.C_lo + fit.C_hi) / 2.0 - 0.25) < 2.5e-7


def test_generic_p_integration():
    prof = integrate_phi(1.0, p=-2, free_coeff=0.5, r_max=100.0)
    assert prof.classification.tag in (SolutionTag.DIVERGENT,
                                       SolutionTag.ALPHA_IMAGINARY,
                                       SolutionTag.FINITE_ACTION)
    assert prof.phi[0] == pytest.approx(-0.5, rel=1e-4)
