import numpy as np
import pytest
from hypothesis import given, strategies as st

from schwym import (MapParams, coefficient_diagnostics, integrate_phi,
                    mapping_coefficients, omega_of_s, s_of_omega)
from schwym.mapping import omega_ode_residual


@given(st.floats(0, 10), st.floats(0.5, 2), st.floats(0.5, 2))
def test_omega_round_trip(s, R, a):
    # ranges keep omega away from 1, where the inverse map loses precision
    params = MapParams(R=R, a=a)
    omega = omega_of_s(s, params)
    assert 0.0 <= omega < 1.0
    back = s_of_omega(omega, params)
    assert back == pytest.approx(s, rel=1e-9, abs=1e-12)


def test_default_map_is_one_minus_2m_over_r():
    s = np.linspace(0.0, 100.0, 50)
    r = 2.0 + s  # m = 1 and MapParams(R=m, a=1)
    np.testing.assert_allclose(omega_of_s(s, MapParams(R=1.0, a=1.0)),
                               1.0 - 2.0 / r, rtol=1e-14)


def test_domain_errors():
    with pytest.raises(ValueError):
        omega_of_s(-1.0)
    with pytest.raises(ValueError):
        s_of_omega(1.0)
    with pytest.raises(ValueError):
        MapParams(R=0.0)


@pytest.mark.parametrize("kappa", [-3.0, -2.7, -2.5, -2.2, -2.0])
def test_low_order_b_coefficients(kappa):
    ser = mapping_coefficients(1.0, kappa, order=10)
    q = kappa**2 + 5.0 * kappa + 6.0
    assert ser.b[0] == pytest.approx(-0.25)
    assert ser.b[1] == pytest.approx(0.5)
    assert ser.b[2] == pytest.approx((kappa + 2.0) / 4.0, abs=1e-15)
    assert ser.b[3] == 0.0
    assert ser.b[4] == pytest.approx(-q / 16.0, rel=1e-12, abs=1e-15)
    assert ser.b[5] == pytest.approx(-q / 15.0, rel=1e-12, abs=1e-15)


def test_polynomial_degeneration_at_endpoints():
    # the monopole is degree 2 and the dyon degree 1 in omega
    mono = mapping_coefficients(1.0, -3.0, order=50)
    assert np.max(np.abs(mono.b[3:])) <= 1e-14
    np.testing.assert_allclose(mono.b[:3], [-0.25, 0.5, -0.25])
    dyon = mapping_coefficients(1.0, -2.0, order=50)
    assert np.max(np.abs(dyon.b[2:])) <= 1e-14
    np.testing.assert_allclose(dyon.b[:2], [-0.25, 0.5])


def test_omega_ode_residual_small():
    ser = mapping_coefficients(1.0, -2.5, order=400)
    omega = np.linspace(0.0, 0.8, 100)
    assert np.max(np.abs(omega_ode_residual(ser, omega))) < 1e-10


def test_eval_matches_closed_forms():
    r = np.geomspace(2.0, 1e4, 200)
    mono = mapping_coefficients(1.0, -3.0, order=50)
    phi, dphi = mono.eval(r)
    np.testing.assert_allclose(phi, -1.0 / r**2, atol=1e-15)
    np.testing.assert_allclose(dphi, 2.0 / r**3, atol=1e-15)
    dyon = mapping_coefficients(1.0, -2.0, order=50)
    phi, _ = dyon.eval(r)
    np.testing.assert_allclose(phi, 0.25 - 1.0 / r, atol=1e-15)


def test_eval_domain():
    ser = mapping_coefficients(1.0, -2.5, order=10)
    with pytest.raises(ValueError):
        ser.eval(1.9)


def test_mapped_vs_numeric_interior(profile_cache):
    ser = mapping_coefficients(1.0, -2.5, order=2000)
    prof = profile_cache(-2.5)
    r = np.linspace(2.0 + 1e-9, 20.0, 400)
    phi_map, _ = ser.eval(r)
    phi_num, _ = prof(r)
    assert np.max(np.abs(phi_map - phi_num)) < 1e-6


def test_diagnostics_inside_family():
    ser = mapping_coefficients(1.0, -2.5, order=400)
    diag = coefficient_diagnostics(ser)
    assert diag.reliable
    assert diag.decay_trend < 0.0
    assert diag.tail_bound(0.5, ser.order) < 1e-10


def test_diagnostics_outside_family():
    ser = mapping_coefficients(1.0, -3.5, order=400)
    diag = coefficient_diagnostics(ser)
    assert not diag.reliable
    assert diag.tail_bound(0.5, ser.order) == np.inf


def test_diagnostics_order_requirement():
    ser = mapping_coefficients(1.0, -2.5, order=50)
    with pytest.raises(ValueError):
        coefficient_diagnostics(ser)
