"""Solver library for the one-parameter family of spherically symmetric
self-dual SU(2) Yang-Mills solutions on the Euclidean Schwarzschild
background: horizon series, outward integration with classification,
globally convergent mapped series, and action/charge observables."""

from .domain import (FamilyParams, PhysParams, RadialProfile, SolutionClass,
                     SolutionTag, free_coeff_from_kappa, kappa_from_free_coeff,
                     rescale_profile)
from .frobenius import (ClosedFormKind, HorizonSeries, SeriesError,
                        closed_form, derive_horizon_series, series_residual)
from .mapping import (MapParams, MappedSeries, coefficient_diagnostics,
                      eval_mapped, mapping_coefficients, omega_of_s, s_of_omega)
from .observables import (ObservableReport, action_boundary, action_bracket,
                          action_volume, charges, lagrangian_density,
                          observable_report)
from .ode import (AsymptoticFit, alpha_of, fit_asymptotics, integrate_phi,
                  seed_initial_conditions)
from .properties import (PropertyReport, check_alpha_reality,
                         check_closed_form_reduction, check_ordering,
                         classify_family, run_suite)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticFit", "ClosedFormKind", "FamilyParams", "HorizonSeries",
    "MapParams", "MappedSeries", "ObservableReport", "PhysParams",
    "PropertyReport", "RadialProfile", "SeriesError", "SolutionClass",
    "SolutionTag", "action_boundary", "action_bracket", "action_volume",
    "alpha_of", "charges", "check_alpha_reality",
    "check_closed_form_reduction", "check_ordering", "classify_family",
    "closed_form", "coefficient_diagnostics", "derive_horizon_series",
    "eval_mapped", "fit_asymptotics", "free_coeff_from_kappa",
    "integrate_phi", "kappa_from_free_coeff", "lagrangian_density",
    "mapping_coefficients", "observable_report", "omega_of_s",
    "rescale_profile", "run_suite", "s_of_omega", "seed_initial_conditions",
    "series_residual",
]
