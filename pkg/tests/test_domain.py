import numpy as np
import pytest
from hypothesis import given, strategies as st

from schwym import (ClosedFormKind, FamilyParams, PhysParams, RadialProfile,
                    SolutionClass, SolutionTag, closed_form,
                    free_coeff_from_kappa, kappa_from_free_coeff,
                    rescale_profile)


def test_phys_params_horizon():
    assert PhysParams(m=1.5).horizon_radius == 3.0
    with pytest.raises(ValueError):
        PhysParams(m=0.0)
    with pytest.raises(ValueError):
        PhysParams(m=-1.0)


@given(st.floats(-10, 10), st.floats(0.1, 10))
def test_kappa_free_coeff_bijection(kappa, m):
    assert kappa_from_free_coeff(free_coeff_from_kappa(kappa, m), m) == \
        pytest.approx(kappa, rel=1e-14, abs=1e-14)


def test_family_params_kappa():
    fp = FamilyParams.from_kappa(-2.5, m=1.0)
    assert fp.p == -1
    assert fp.free_coeff == pytest.approx(-2.5 / 16.0)
    assert fp.kappa == pytest.approx(-2.5)
    assert fp.resonance_index == 2
    assert FamilyParams(p=1, free_coeff=0.0).kappa is None
    assert FamilyParams(p=-2, free_coeff=0.1).resonance_index == 3


def test_family_params_validation():
    with pytest.raises(ValueError):
        FamilyParams(p=1.5, free_coeff=0.0)
    with pytest.raises(ValueError):
        FamilyParams(p=-1, free_coeff=0.0, m=-1.0)


def test_profile_grid_validation():
    cls = SolutionClass(SolutionTag.FINITE_ACTION)
    good = np.array([2.1, 2.2, 2.3])
    vals = np.zeros(3)
    RadialProfile(m=1.0, kappa=None, grid=good, phi=vals, dphi=vals,
                  classification=cls)
    with pytest.raises(ValueError):
        RadialProfile(m=1.0, kappa=None, grid=good[::-1], phi=vals, dphi=vals,
                      classification=cls)
    with pytest.raises(ValueError):
        RadialProfile(m=1.0, kappa=None, grid=np.array([1.9, 2.2, 2.3]),
                      phi=vals, dphi=vals, classification=cls)


def test_solution_class_str():
    assert str(SolutionClass(SolutionTag.FINITE_ACTION)) == "FiniteAction"
    assert str(SolutionClass(SolutionTag.DIVERGENT, witness_r=8.5)) == \
        "Divergent(r=8.5)"


def test_rescale_monopole_matches_closed_form():
    # the monopole at m=1 rescaled to m=2 must equal the m=2 closed form
    p1 = closed_form(ClosedFormKind.MONOPOLE, 1.0)
    p2 = rescale_profile(p1, 1.0, 2.0)
    exact = closed_form(ClosedFormKind.MONOPOLE, 2.0)
    r = np.geomspace(4.0 + 1e-6, 200.0, 200)
    for got, want in zip(p2(r), exact(r)):
        np.testing.assert_allclose(got, want, rtol=1e-13, atol=1e-16)
    assert p2.m == 2.0
    assert p2.r_min == pytest.approx(2.0 * p1.r_min)


def test_rescale_witness_scales():
    cls = SolutionClass(SolutionTag.DIVERGENT, witness_r=10.0)
    prof = RadialProfile(m=1.0, kappa=None, grid=np.array([2.5, 3.0]),
                         phi=np.zeros(2), dphi=np.zeros(2), classification=cls)
    out = rescale_profile(prof, 1.0, 3.0)
    assert out.classification.witness_r == pytest.approx(30.0)
