"""Horizon power series of phi in s = r - 2m.

The series is built by order-by-order elimination: substituting
phi = sum a_k s^k into the radial equation written in s,

    ((s+2m)/2) s phi'' + s phi' - phi + (s+2m)^2 phi' phi = 0,

collecting the coefficient of s^n, and solving for a_{n+1}. The linear
coefficient multiplying a_{n+1} is m (n+1)(n+p), which vanishes at the
resonant order n = -p: there the lower orders must already cancel and
a_{-p+1} is supplied as the free family parameter. The Charap-Duff closed
forms are provided as exact oracles.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .domain import RadialProfile, SolutionClass, SolutionTag

#: tolerance for the lower-order cancellation at the resonant order
RESONANCE_TOL = 1e-9


class SeriesError(ValueError):
    """No power-series solution exists for the requested (p, free_coeff)."""


@dataclass(frozen=True)
class HorizonSeries:
    """Truncated series phi = sum_k a_k (r - 2m)^k with resonance metadata."""
    m: float
    p: int
    coeffs: np.ndarray
    free_coeff: float

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def resonance_index(self) -> int:
        return -self.p + 1

    @property
    def kappa(self) -> float | None:
        """Dimensionless label 16 m^3 a_2, defined for the p = -1 family."""
        if self.p != -1:
            return None
        return 16.0 * self.m**3 * self.coeffs[2]

    def eval(self, s):
        """Horner evaluation of (phi, phi') at s = r - 2m >= 0.

        Only meaningful well inside the finite convergence radius (at most 2m).
        """
        s = np.asarray(s, dtype=float)
        a = self.coeffs
        phi = np.full_like(s, a[-1], dtype=float)
        dphi = np.zeros_like(s, dtype=float)
        for k in range(len(a) - 2, -1, -1):
            dphi = dphi * s + phi
            phi = phi * s + a[k]
        return phi, dphi


def _product_coeff(a: np.ndarray, n: int, exclude_top: bool) -> float:
    """Coefficient of s^n in phi' * phi, optionally dropping the a_{n+1} term."""
    if n < 0:
        return 0.0
    top = n if exclude_top else n + 1
    i = np.arange(0, top)
    if len(i) == 0:
        return 0.0
    return float(np.dot((i + 1) * a[i + 1], a[n - i]))


def derive_horizon_series(m: float, p: int, free_coeff: float | None = None,
                          order: int = 12) -> HorizonSeries:
    """Build the order-N horizon series for winding label p.

    For p <= 0 the coefficient a_{-p+1} is not determined by the recurrence;
    `free_coeff` supplies it. For p >= 1 there is no free coefficient and the
    series is unique (the Abelian one); passing a nonzero `free_coeff` raises
    SeriesError.
    """
    if m <= 0:
        raise ValueError(f"mass parameter must be positive, got {m}")
    if p != int(p):
        raise ValueError(f"p must be an integer, got {p}")
    p = int(p)
    k_res = -p + 1
    if p <= 0:
        if free_coeff is None:
            raise ValueError("free_coeff is required for p <= 0")
        if order < k_res + 2:
            raise ValueError(f"order must be >= {k_res + 2} for p = {p}")
    else:
        if free_coeff not in (None, 0.0):
            raise SeriesError(
                f"no series solution for p = {p}: the recurrence has no free "
                "coefficient (only the Abelian solution exists)")

    a = np.zeros(order + 1)
    a[0] = p / (4.0 * m)
    for n in range(order):
        # residual coefficient at order n with a_{n+1} unknown
        res = 0.5 * n * (n - 1) * a[n] + n * a[n] - a[n]
        res += _product_coeff(a, n - 2, exclude_top=False)
        res += 4.0 * m * _product_coeff(a, n - 1, exclude_top=False)
        res += 4.0 * m**2 * _product_coeff(a, n, exclude_top=True)
        lin = m * (n + 1) * (n + p)
        if n == -p:
            scale = max(1.0, float(np.max(np.abs(a[: n + 1]))))
            if abs(res) > RESONANCE_TOL * scale:
                raise SeriesError(
                    f"no series solution for p = {p}: lower-order residual "
                    f"{res:.3e} at the resonant order {n}")
            a[n + 1] = free_coeff
        else:
            if lin == 0.0:
                raise RuntimeError(
                    f"unexpected vanishing linear coefficient at order {n}")
            a[n + 1] = -res / lin
    return HorizonSeries(m=m, p=p, coeffs=a, free_coeff=float(a[k_res]) if k_res >= 0 else 0.0)


def series_residual(series: HorizonSeries, s):
    """Residual of the radial equation for the truncated series, in s.

    O(s^order) for a correctly built series; used as the structural check of
    the unprinted recurrence.
    """
    s = np.asarray(s, dtype=float)
    a = series.coeffs
    m = series.m
    k = np.arange(len(a))
    phi = np.polynomial.polynomial.polyval(s, a)
    dphi = np.polynomial.polynomial.polyval(s, (k * a)[1:])
    ddphi = np.polynomial.polynomial.polyval(s, (k * (k - 1) * a)[2:])
    return (0.5 * (s + 2 * m) * s * ddphi + s * dphi - phi
            + (s + 2 * m) ** 2 * dphi * phi)


class ClosedFormKind(Enum):
    TRIVIAL_ABELIAN = "TrivialAbelian"
    MONOPOLE = "Monopole"
    ABELIAN_DYON = "AbelianDyon"


def closed_form(kind: ClosedFormKind, m: float, c: float | None = None,
                grid: np.ndarray | None = None) -> RadialProfile:
    """Exact Charap-Duff profile (actions 0, 1, 2 respectively).

    `c` is the asymptotic constant of the Abelian dyon phi = c - 1/r; it
    defaults to the regularity choice 1/(4m). The returned profile evaluates
    the closed form exactly (the grid is only for sampling/CSV purposes).
    """
    if m <= 0:
        raise ValueError(f"mass parameter must be positive, got {m}")
    if grid is None:
        grid = 2.0 * m + np.geomspace(1e-6 * m, 98.0 * m, 512)

    if kind is ClosedFormKind.TRIVIAL_ABELIAN:
        def ev(r):
            r = np.asarray(r, dtype=float)
            return np.zeros_like(r), np.zeros_like(r)
        kappa = None
        tag = SolutionTag.ABELIAN
    elif kind is ClosedFormKind.MONOPOLE:
        def ev(r):
            r = np.asarray(r, dtype=float)
            return -m / r**2, 2.0 * m / r**3
        kappa = -3.0
        tag = SolutionTag.FINITE_ACTION
    elif kind is ClosedFormKind.ABELIAN_DYON:
        cc = 1.0 / (4.0 * m) if c is None else c

        def ev(r):
            r = np.asarray(r, dtype=float)
            return cc - 1.0 / r, 1.0 / r**2
        kappa = -2.0 if c is None else None
        tag = SolutionTag.ABELIAN
    else:
        raise ValueError(f"unknown closed form kind: {kind}")

    phi, dphi = ev(grid)
    return RadialProfile(m=m, kappa=kappa, grid=grid, phi=phi, dphi=dphi,
                         classification=SolutionClass(tag), tol=0.0, evaluator=ev)


def coefficients_csv_rows(series: HorizonSeries):
    """(k, a_k) rows for the optional coefficient dump."""
    return [(k, float(ak)) for k, ak in enumerate(series.coeffs)]
