"""Outward integration of the radial equation with online classification.

The second-order scalar equation is integrated (rather than the first-order
self-duality pair, whose alpha equation is singular at the horizon and has a
square-root branch at r = 2m for the p = -1 family). Seeding happens at
r = 2m + eps from the horizon series; the run halts early on the first
classification event (divergence or loss of alpha-reality).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .domain import (RadialProfile, SolutionClass, SolutionTag,
                     free_coeff_from_kappa)
from .frobenius import HorizonSeries, derive_horizon_series

DEFAULT_EPSILON = 1e-6
DEFAULT_TOL = 1e-12
DEFAULT_RMAX = 1e4
#: |phi| or m^2 |phi'| beyond this (in units of 1/m) flags divergence; every
#: finite-action member has |phi| <= 1/(4m)
DIVERGENCE_THRESHOLD = 10.0
TOL_ALPHA = 1e-10
#: slack allowed on the squeeze bounds when declaring FiniteAction at r_max
SQUEEZE_SLACK = 1e-6
#: beyond this radius (units of m) the dyon tail's contracting mode (decay
#: rate 2C) stability-limits the explicit solver to h ~ 1/C, so the far
#: region is handed to a stiff-capable method
STIFF_SWITCH_RADIUS = 200.0


def phi_rhs(r, y, m):
    """First-order system for (phi, phi'); phi'' from the radial equation."""
    phi, dphi = y
    ddphi = 2.0 * (phi - (r - 2.0 * m) * dphi - r * r * phi * dphi) / (r * (r - 2.0 * m))
    return [dphi, ddphi]


def ode_residual(r, phi, dphi, ddphi, m):
    """Residual of the radial equation at given (phi, phi', phi'')."""
    return (0.5 * r * (r - 2.0 * m) * ddphi + (r - 2.0 * m) * dphi - phi
            + r * r * dphi * phi)


def seed_initial_conditions(series: HorizonSeries, epsilon: float):
    """Initial data (r0, phi0, phi0') at r0 = 2m + eps from the horizon series."""
    m = series.m
    if not (0.0 < epsilon <= 0.01 * m):
        raise ValueError(f"epsilon must be in (0, 0.01 m], got {epsilon}")
    if series.order < 8:
        raise ValueError(f"series order must be >= 8 for seeding, got {series.order}")
    phi0, dphi0 = series.eval(epsilon)
    return 2.0 * m + epsilon, float(phi0), float(dphi0)


def integrate_phi(m: float = 1.0, kappa: float | None = None, *,
                  p: int = -1, free_coeff: float | None = None,
                  epsilon: float | None = None, r_max: float | None = None,
                  tol: float = DEFAULT_TOL, series_order: int = 12,
                  seed: tuple[float, float, float] | None = None,
                  dphi_perturbation: float = 0.0) -> RadialProfile:
    """Integrate outward from the horizon and classify the global behavior.

    Either `kappa` (p = -1 family) or (`p`, `free_coeff`) selects the
    solution. `seed` overrides the series-generated initial data; a nonzero
    `dphi_perturbation` is added to the seeded phi' (used by the family scans
    to probe off-series initial data).
    """
    if not (1e-14 <= tol <= 1e-6):
        raise ValueError(f"tol must be in [1e-14, 1e-6], got {tol}")
    if epsilon is None:
        epsilon = DEFAULT_EPSILON * m
    if r_max is None:
        r_max = DEFAULT_RMAX * m
    if r_max <= 2.0 * m + epsilon:
        raise ValueError("r_max must exceed 2m + epsilon")

    if kappa is not None:
        p, free_coeff = -1, free_coeff_from_kappa(kappa, m)
    if seed is None:
        series = derive_horizon_series(m, p, free_coeff, order=series_order)
        r0, phi0, dphi0 = seed_initial_conditions(series, epsilon)
        dphi0 += dphi_perturbation
    else:
        r0, phi0, dphi0 = seed

    # safety factor 100 on the solver so `tol` bounds the delivered accuracy:
    # the controller's per-step estimate understates the accumulated error in
    # the growing mode near the kappa = -3 endpoint
    rtol = max(tol * 1e-2, 2.3e-14)
    atol = max(tol * 1e-6, 1e-18)

    def ev_div_phi(r, y, *_):
        return DIVERGENCE_THRESHOLD / m - abs(y[0])

    def ev_div_dphi(r, y, *_):
        return DIVERGENCE_THRESHOLD / m**2 - abs(y[1])

    def ev_alpha(r, y, *_):
        # noise floor: alpha^2 inherits r^2 times the phi' error scale
        floor = TOL_ALPHA + 10.0 * r * r * (atol + rtol * abs(y[1]))
        return 1.0 - r * r * y[1] + floor

    for ev in (ev_div_phi, ev_div_dphi, ev_alpha):
        ev.terminal = True

    # two-leg integration: high-order explicit near the horizon (accuracy in
    # the growing mode), stiff-capable beyond STIFF_SWITCH_RADIUS where the
    # dyon tail's contracting mode caps the explicit step size
    r_switch = STIFF_SWITCH_RADIUS * m
    spans = [(r0, min(r_max, r_switch), "DOP853", rtol)]
    if r_max > r_switch:
        spans.append((r_switch, r_max, "LSODA", max(rtol, 1e-13)))

    t_parts, y_parts, denses = [], [], []
    y_start = [phi0, dphi0]
    for i, (ra, rb, method, leg_rtol) in enumerate(spans):
        sol = solve_ivp(phi_rhs, (ra, rb), y_start, args=(m,),
                        method=method, rtol=leg_rtol, atol=atol,
                        dense_output=True,
                        events=[ev_div_phi, ev_div_dphi, ev_alpha])
        skip = 1 if i > 0 else 0
        t_parts.append(sol.t[skip:])
        y_parts.append(sol.y[:, skip:])
        denses.append(sol.sol)
        y_start = sol.y[:, -1]
        if sol.status != 0:
            break

    grid = np.concatenate(t_parts)
    phi, dphi = np.hstack(y_parts)
    if sol.status == 1:
        if len(sol.t_events[2]) > 0:
            cls = SolutionClass(SolutionTag.ALPHA_IMAGINARY,
                                witness_r=float(sol.t_events[2][0]))
        else:
            r_ev = min(float(te[0]) for te in sol.t_events[:2] if len(te) > 0)
            cls = SolutionClass(SolutionTag.DIVERGENT, witness_r=r_ev)
    elif sol.status == 0:
        cls = _classify_at_rmax(m, grid, phi, family_p=p)
    else:
        # step-size underflow near an apparent singularity
        cls = SolutionClass(SolutionTag.DIVERGENT, witness_r=float(grid[-1]))

    if len(denses) == 1:
        dense = denses[0]

        def evaluator(r):
            y = dense(np.asarray(r, dtype=float))
            return y[0], y[1]
    else:
        cut = float(denses[0].t_max)

        def evaluator(r):
            r = np.asarray(r, dtype=float)
            if r.ndim == 0:
                y = (denses[0] if r <= cut else denses[1])(r)
                return y[0], y[1]
            inner = r <= cut
            y = np.empty((2, r.size))
            if np.any(inner):
                y[:, inner] = denses[0](r[inner])
            if not np.all(inner):
                y[:, ~inner] = denses[1](r[~inner])
            return y[0].reshape(r.shape), y[1].reshape(r.shape)

    kap = 16.0 * m**3 * free_coeff if (p == -1 and free_coeff is not None) else None
    return RadialProfile(m=m, kappa=kap, grid=grid, phi=phi, dphi=dphi,
                         classification=cls, tol=tol, evaluator=evaluator)


def _classify_at_rmax(m, grid, phi, family_p=-1):
    """FiniteAction only if the squeeze bounds held all the way out.

    The squeeze -m/r^2 < phi < 1/(4m) - 1/r is specific to the p = -1
    family; other winding labels that reach r_max without an event are left
    FiniteAction (bounded by construction of the divergence events)."""
    if family_p != -1:
        return SolutionClass(SolutionTag.FINITE_ACTION)
    lo = -m / grid**2 - SQUEEZE_SLACK
    hi = 1.0 / (4.0 * m) - 1.0 / grid + SQUEEZE_SLACK
    below = phi < lo
    above = phi > hi
    if np.any(below):
        return SolutionClass(SolutionTag.DIVERGENT,
                             witness_r=float(grid[np.argmax(below)]))
    if np.any(above):
        return SolutionClass(SolutionTag.ALPHA_IMAGINARY,
                             witness_r=float(grid[np.argmax(above)]))
    return SolutionClass(SolutionTag.FINITE_ACTION)


def alpha_of(profile: RadialProfile, r, tol_alpha: float = TOL_ALPHA):
    """alpha(r) = sqrt(1 - r^2 phi'(r)), nonnegative sign convention."""
    r = np.asarray(r, dtype=float)
    _, dphi = profile(r)
    arg = 1.0 - r * r * dphi
    if np.any(arg < -tol_alpha):
        bad = np.atleast_1d(arg < -tol_alpha)
        witness = float(np.atleast_1d(r)[bad][0])
        raise ValueError(f"alpha imaginary at r = {witness}: "
                         f"1 - r^2 phi' = {float(np.atleast_1d(arg)[bad][0]):.3e}")
    return np.sqrt(np.maximum(arg, 0.0))


def profile_residual(profile: RadialProfile, r, h: float = 1e-6):
    """Radial-equation residual along the profile, phi'' by central difference
    of the dense-output phi'."""
    r = np.asarray(r, dtype=float)
    phi, dphi = profile(r)
    _, dp = profile(r + h)
    _, dm = profile(r - h)
    ddphi = (dp - dm) / (2.0 * h)
    return ode_residual(r, phi, dphi, ddphi, profile.m)


@dataclass(frozen=True)
class AsymptoticFit:
    """Asymptotic constants of a finite-action profile.

    C_kappa is the limit of phi at infinity with the rigorous bracket
    [C_lo, C_hi]; lam and decay_rate come from a log-linear fit of the
    exponential tail (None when the tail is below the resolvable floor).
    """
    C_kappa: float
    C_lo: float
    C_hi: float
    lam: float | None
    decay_rate: float | None
    monopole_fallback: bool = False
    n_fit_points: int = 0


def fit_asymptotics(profile: RadialProfile,
                    window: tuple[float, float] = (1e-11, 1e-3),
                    n_samples: int = 4000) -> AsymptoticFit:
    """Extract (C_kappa, lambda, decay rate) from a finite-action profile.

    The bracket phi(R) + m/R^2 < phi(inf) < phi(R) + 1/R certifies C; the
    point value uses the upper end, whose defect is exponentially small
    because phi = C - 1/r solves the radial equation exactly. Profiles on the
    monopole branch (r^2 phi' -> 0) report the fallback C = 0.
    """
    m = profile.m
    if profile.classification.tag not in (SolutionTag.FINITE_ACTION,
                                          SolutionTag.ABELIAN):
        raise ValueError(f"asymptotic fit requires a FiniteAction profile, "
                         f"got {profile.classification}")
    R = profile.r_max
    if R < 50.0 * m:
        raise ValueError(f"r_max = {R} too small for an asymptotic fit (need >= 50 m)")

    phiR, dphiR = profile(R)
    C_lo = float(phiR) + m / R**2
    C_hi = float(phiR) + 1.0 / R
    # branch discriminant r^2 phi' evaluated no farther out than 1e4 m, where
    # the r^2 amplification of the phi' noise floor is still negligible
    R_w = min(R, 1e4 * m)
    _, dphiW = profile(R_w)
    w = R_w * R_w * float(dphiW)
    if w < 0.5:
        # monopole branch: phi' falls off faster than 1/r^2, C = 0
        return AsymptoticFit(C_kappa=0.0, C_lo=C_lo, C_hi=C_hi, lam=None,
                             decay_rate=None, monopole_fallback=True)

    C = C_hi
    r = np.geomspace(profile.r_min, R, n_samples)
    phi, _ = profile(r)
    rho = phi - C + 1.0 / r
    mask = (np.abs(rho) >= window[0]) & (np.abs(rho) <= window[1])
    if np.count_nonzero(mask) < 8:
        return AsymptoticFit(C_kappa=C, C_lo=C_lo, C_hi=C_hi, lam=None,
                             decay_rate=None, n_fit_points=int(np.count_nonzero(mask)))
    rw, rhow = r[mask], rho[mask]
    sign = np.sign(np.median(rhow))
    keep = np.sign(rhow) == sign
    rw, rhow = rw[keep], rhow[keep]
    # the linearized tail is ~ r^(-4mC) e^(-2Cr); remove the known power
    # prefactor so the fitted slope is the pure exponential rate
    slope, intercept = np.polyfit(
        rw, np.log(np.abs(rhow)) + 4.0 * m * C * np.log(rw), 1)
    decay = -float(slope)
    lam = float(sign * 2.0 * C * np.exp(intercept))
    return AsymptoticFit(C_kappa=C, C_lo=C_lo, C_hi=C_hi, lam=lam,
                         decay_rate=decay, n_fit_points=len(rw))
