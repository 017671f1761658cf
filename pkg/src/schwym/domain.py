"""Shared physical types: mass scale, family labels, solution classification,
radial profiles and the mass-rescaling that relates them.

Everything here is an immutable value object. Internally the solvers work at
m = 1; user-facing masses are applied by `rescale_profile` on the way out.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable

import numpy as np


class SolutionTag(Enum):
    FINITE_ACTION = "FiniteAction"
    DIVERGENT = "Divergent"
    ALPHA_IMAGINARY = "AlphaImaginary"
    ABELIAN = "Abelian"


@dataclass(frozen=True)
class SolutionClass:
    """Outcome of classifying a radial solution.

    witness_r records where the classifying event was detected; it is None
    for FiniteAction and Abelian solutions.
    """
    tag: SolutionTag
    witness_r: float | None = None

    def __str__(self):
        if self.witness_r is None:
            return self.tag.value
        return f"{self.tag.value}(r={self.witness_r:.6g})"


@dataclass(frozen=True)
class PhysParams:
    """Mass parameter m (> 0); the horizon sits at r = 2m."""
    m: float

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"mass parameter must be positive, got {self.m}")

    @property
    def horizon_radius(self) -> float:
        return 2.0 * self.m


def kappa_from_free_coeff(free_coeff: float, m: float) -> float:
    """Dimensionless family parameter from the resonant quadratic coefficient."""
    return 16.0 * m**3 * free_coeff


def free_coeff_from_kappa(kappa: float, m: float) -> float:
    return kappa / (16.0 * m**3)


@dataclass(frozen=True)
class FamilyParams:
    """Label (p, free coefficient) of one member of the horizon-series family.

    p is the integer winding label fixing phi(2m) = p/(4m). The resonant
    coefficient a_{-p+1} is the free parameter; for p = -1 it is in exact
    bijection with kappa = 16 m^3 a_2.
    """
    p: int
    free_coeff: float
    m: float = 1.0

    def __post_init__(self):
        if self.p != int(self.p):
            raise ValueError(f"p must be an integer, got {self.p}")
        if not self.m > 0:
            raise ValueError(f"mass parameter must be positive, got {self.m}")

    @classmethod
    def from_kappa(cls, kappa: float, m: float = 1.0) -> "FamilyParams":
        return cls(p=-1, free_coeff=free_coeff_from_kappa(kappa, m), m=m)

    @property
    def kappa(self) -> float | None:
        if self.p != -1:
            return None
        return kappa_from_free_coeff(self.free_coeff, self.m)

    @property
    def resonance_index(self) -> int:
        return -self.p + 1


@dataclass(frozen=True)
class RadialProfile:
    """Sampled radial solution (phi, phi') on [2m + eps, r_max].

    The evaluator callable interpolates between nodes (dense solver output,
    or the exact closed form for analytic profiles) with local error at the
    integrator tolerance.
    """
    m: float
    kappa: float | None
    grid: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    classification: SolutionClass
    tol: float = 1e-12
    evaluator: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]] | None = \
        field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("profile grid must be strictly increasing")
        if self.grid[0] <= 2.0 * self.m:
            raise ValueError("profile grid must lie outside the horizon r = 2m")

    @property
    def r_min(self) -> float:
        return float(self.grid[0])

    @property
    def r_max(self) -> float:
        return float(self.grid[-1])

    def __call__(self, r):
        """Evaluate (phi, phi') at radii r, interpolating between nodes."""
        r = np.asarray(r, dtype=float)
        if self.evaluator is None:
            phi = np.interp(r, self.grid, self.phi)
            dphi = np.interp(r, self.grid, self.dphi)
            return phi, dphi
        return self.evaluator(r)

    def phi_at(self, r):
        return self(r)[0]

    def dphi_at(self, r):
        return self(r)[1]


def rescale_profile(profile: RadialProfile, m_old: float, m_new: float) -> RadialProfile:
    """Carry a solution at mass m_old to mass m_new.

    The scalar equation is covariant under (r, phi) -> (lam*r, phi/lam):
    the rescaled profile solves the same equation with the new mass.
    """
    if not (m_old > 0 and m_new > 0):
        raise ValueError("masses must be positive")
    lam = m_new / m_old
    old_eval = profile.evaluator

    def scaled(r):
        if old_eval is None:
            phi = np.interp(np.asarray(r) / lam, profile.grid, profile.phi)
            dphi = np.interp(np.asarray(r) / lam, profile.grid, profile.dphi)
        else:
            phi, dphi = old_eval(np.asarray(r) / lam)
        return phi / lam, dphi / lam**2

    cls = profile.classification
    if cls.witness_r is not None:
        cls = replace(cls, witness_r=cls.witness_r * lam)
    return RadialProfile(
        m=profile.m * lam,
        kappa=profile.kappa,
        grid=profile.grid * lam,
        phi=profile.phi / lam,
        dphi=profile.dphi / lam**2,
        classification=cls,
        tol=profile.tol,
        evaluator=scaled,
    )
