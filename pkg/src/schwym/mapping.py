"""Globally convergent series via conformal compactification of the radius.

The half-line s = r - 2m in [0, inf) is mapped to omega in [0, 1); with the
validated choice (R, a) = (m, 1) the map is simply omega = 1 - 2m/r. In the
new variable the solution satisfies

    (omega-1)^2 omega psi'' + 4 m psi psi' - 2 psi = 0,

whose series coefficients b_n obey an explicit recurrence for n >= 3 (the
n = 1 case would divide by n^2 - 1, so b_0..b_3 are fixed separately:
b_0 = -1/4, b_1 = 1/2, b_2 = (kappa+2)/4, b_3 = 0).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domain import free_coeff_from_kappa  # noqa: F401  (re-export convenience)


@dataclass(frozen=True)
class MapParams:
    """Scale R and exponent a of the compactifying map. Only (m, 1) is
    validated; other values are supported for experimentation."""
    R: float = 1.0
    a: float = 1.0

    def __post_init__(self):
        if self.R <= 0 or self.a <= 0:
            raise ValueError(f"map parameters must be positive, got {self}")


def omega_of_s(s, params: MapParams = MapParams()):
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("s must be nonnegative")
    u = (1.0 + s / params.R) ** (1.0 / params.a)
    return (u - 1.0) / (u + 1.0)


def s_of_omega(omega, params: MapParams = MapParams()):
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0) or np.any(omega >= 1):
        raise ValueError("omega must lie in [0, 1)")
    return params.R * (((1.0 + omega) / (1.0 - omega)) ** params.a - 1.0)


@dataclass(frozen=True)
class MappedSeries:
    """phi(r) = (1/m) sum b_n omega^n with omega = 1 - 2m/r."""
    m: float
    kappa: float
    b: np.ndarray

    @property
    def order(self) -> int:
        return len(self.b) - 1

    def eval(self, r):
        """(phi, phi') at radii r >= 2m, Horner from the highest index down."""
        r = np.asarray(r, dtype=float)
        if np.any(r < 2.0 * self.m):
            raise ValueError("r must be >= 2m")
        omega = 1.0 - 2.0 * self.m / r
        b = self.b
        psi = np.full_like(omega, b[-1], dtype=float)
        dpsi = np.zeros_like(omega, dtype=float)
        for n in range(len(b) - 2, -1, -1):
            dpsi = dpsi * omega + psi
            psi = psi * omega + b[n]
        domega_dr = 2.0 * self.m / r**2
        return psi / self.m, dpsi / self.m * domega_dr


def mapping_coefficients(m: float, kappa: float, order: int = 2000) -> MappedSeries:
    """Generate b_0..b_N. O(N^2) total from the convolution term."""
    if order < 5:
        raise ValueError(f"order must be >= 5, got {order}")
    b = np.zeros(order + 1)
    b[0] = -0.25
    b[1] = 0.5
    b[2] = (kappa + 2.0) / 4.0
    b[3] = 0.0
    nb = np.arange(order + 1) * b  # updated in place alongside b
    for n in range(3, order):
        conv = float(np.dot(nb[1:n + 1], b[n:0:-1]))
        b[n + 1] = (2.0 * b[n] * (n * (n - 1) + 1)
                    - b[n - 1] * (n - 1) * (n - 2)
                    - 4.0 * conv) / (n * n - 1)
        nb[n + 1] = (n + 1) * b[n + 1]
    return MappedSeries(m=m, kappa=kappa, b=b)


def eval_mapped(series: MappedSeries, r):
    """phi(r) from the mapped series (module-level alias of MappedSeries.eval)."""
    return series.eval(r)


def omega_ode_residual(series: MappedSeries, omega):
    """Residual of the omega-domain equation for the truncated series."""
    omega = np.asarray(omega, dtype=float)
    b = series.b
    n = np.arange(len(b))
    psi = np.polynomial.polynomial.polyval(omega, b)
    dpsi = np.polynomial.polynomial.polyval(omega, (n * b)[1:])
    ddpsi = np.polynomial.polynomial.polyval(omega, (n * (n - 1) * b)[2:])
    return ((omega - 1.0) ** 2 * omega * ddpsi
            + 4.0 * series.m * psi * dpsi - 2.0 * psi)


@dataclass(frozen=True)
class CoefficientDiagnostics:
    leading_max: float
    trailing_max: float
    reliable: bool
    decay_trend: float  # mean log-slope of |b_n| over the trailing half

    def tail_bound(self, omega: float, order: int) -> float:
        """Geometric bound on the truncation error of phi at given omega."""
        if not self.reliable:
            return float("inf")
        return self.trailing_max * omega ** (order + 1) / (1.0 - omega)


def coefficient_diagnostics(series: MappedSeries) -> CoefficientDiagnostics:
    """Decay diagnostics of the b_n; flags growing trailing coefficients
    (expected for kappa outside [-3, -2], where the series is unreliable)."""
    if series.order < 100:
        raise ValueError("diagnostics need order >= 100")
    b = np.abs(series.b)
    half = len(b) // 2
    leading = float(np.max(b[:half]))
    trailing = float(np.max(b[half:]))
    nz = np.nonzero(b[half:] > 0)[0]
    if len(nz) >= 2:
        n_idx = half + nz
        slope = np.polyfit(n_idx, np.log(b[n_idx]), 1)[0]
    else:
        slope = -np.inf  # identically zero tail (closed-form polynomials)
    return CoefficientDiagnostics(
        leading_max=leading, trailing_max=trailing,
        reliable=trailing < leading, decay_trend=float(slope))
