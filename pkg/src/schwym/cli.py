"""Command-line surface: solve / scan / map / check.

Each command writes plain CSV + JSON (17-significant-digit floats, headers
carrying a config echo and content hash) and, unless --no-figures is given,
renders the matching matplotlib figure next to the data.

Exit codes: 0 success or FiniteAction, 2 Divergent, 3 AlphaImaginary,
4 property/diagnostics failure, 1 usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .domain import SolutionTag
from .frobenius import derive_horizon_series
from .io import read_config_file, write_csv, write_json
from .mapping import coefficient_diagnostics, mapping_coefficients
from .observables import lagrangian_density, observable_report
from .ode import integrate_phi
from .properties import run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DIVERGENT = 2
EXIT_ALPHA_IMAGINARY = 3
EXIT_PROPERTY_FAILURE = 4

_CLASS_EXIT = {
    SolutionTag.FINITE_ACTION: EXIT_OK,
    SolutionTag.ABELIAN: EXIT_OK,
    SolutionTag.DIVERGENT: EXIT_DIVERGENT,
    SolutionTag.ALPHA_IMAGINARY: EXIT_ALPHA_IMAGINARY,
}

DEFAULTS = {
    "m": 1.0,
    "epsilon": None,     # 1e-6 * m
    "rmax": None,        # 1e4 * m
    "tol": 1e-12,
    "series_order": 12,
    "map_order": 2000,
    "out": "out",
}


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--m", type=float, default=None, help="mass parameter (default 1)")
    p.add_argument("--epsilon", type=float, default=None,
                   help="seeding offset from the horizon (default 1e-6 m)")
    p.add_argument("--rmax", type=float, default=None,
                   help="outer integration radius (default 1e4 m)")
    p.add_argument("--tol", type=float, default=None,
                   help="integrator tolerance (default 1e-12)")
    p.add_argument("--series-order", type=int, default=None,
                   help="horizon series truncation order (default 12)")
    p.add_argument("--map-order", type=int, default=None,
                   help="mapped series truncation order (default 2000)")
    p.add_argument("--out", type=str, default=None, help="output directory")
    p.add_argument("--config", type=str, default=None,
                   help="flat KEY=VALUE config file (flags override it)")
    p.add_argument("--no-figures", action="store_true",
                   help="emit only the delimited data, no figure rendering")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="schwym",
                                 description="Self-dual SU(2) Yang-Mills solutions "
                                             "on the Euclidean Schwarzschild background")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="integrate one family member and report observables")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--p", type=int, default=-1)
    p.add_argument("--free-coeff", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("scan", help="sweep kappa: classification and action curve")
    p.add_argument("--kappa-range", type=str, required=True, metavar="A:B:N")
    _add_common(p)

    p = sub.add_parser("map", help="mapped-series coefficients and cross-method comparison")
    p.add_argument("--kappa", type=float, required=True)
    _add_common(p)

    p = sub.add_parser("check", help="run the property audit suite")
    p.add_argument("--pairs", type=str, default=None,
                   help='comma pair "k1,k2" restricting the ordering checks')
    p.add_argument("--family-scan", action="store_true",
                   help="include the p-family classification scan (slow)")
    p.add_argument("--inject-dphi", type=float, default=0.0,
                   help=argparse.SUPPRESS)  # fault-injection test hook
    _add_common(p)
    return ap


def _settings(args) -> dict:
    """defaults < config file < CLI flags."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        raw = read_config_file(args.config)
        for k, v in raw.items():
            key = k.replace("-", "_")
            if key not in cfg:
                raise SystemExit(f"unknown config key: {k}")
            if key == "out":
                cfg[key] = v
            elif key in ("series_order", "map_order"):
                cfg[key] = int(v)
            else:
                cfg[key] = float(v)
    for key in cfg:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _alpha_clamped(r, dphi):
    return np.sqrt(np.maximum(1.0 - r * r * dphi, 0.0))


def cmd_solve(args) -> int:
    cfg = _settings(args)
    out = Path(cfg["out"])
    m = cfg["m"]
    prof = integrate_phi(m, args.kappa if args.p == -1 else None,
                         p=args.p, free_coeff=args.free_coeff,
                         epsilon=cfg["epsilon"], r_max=cfg["rmax"],
                         tol=cfg["tol"], series_order=cfg["series_order"])
    echo = {"command": "solve", "kappa": args.kappa, "p": args.p, **_num_cfg(cfg)}
    alpha = _alpha_clamped(prof.grid, prof.dphi)
    dens = lagrangian_density(prof, prof.grid)
    write_csv(out / "profile.csv", ["r", "phi", "dphi", "alpha", "lagrangian_density"],
              zip(prof.grid, prof.phi, prof.dphi, alpha, dens), config=echo)
    report = observable_report(prof)
    write_json(out / "report.json", report.to_dict())
    if not args.no_figures:
        from .figures import render_profile
        render_profile(prof, out / "profile.png")
    print(f"class={prof.classification}  "
          + (f"S={report.S:.9g}" if report.S is not None else "S=n/a"))
    return _CLASS_EXIT[prof.classification.tag]


def _num_cfg(cfg: dict) -> dict:
    return {k: v for k, v in cfg.items() if k != "out"}


def _parse_range(spec: str):
    try:
        a, b, n = spec.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise SystemExit(f"bad --kappa-range (want A:B:N): {spec!r}")
    if n < 1:
        raise SystemExit("kappa-range count must be >= 1")
    return np.linspace(a, b, n)


def cmd_scan(args) -> int:
    cfg = _settings(args)
    out = Path(cfg["out"])
    kappas = _parse_range(args.kappa_range)
    if kappas.min() < -4.0 or kappas.max() > -1.0:
        raise SystemExit("kappa range must lie within [-4, -1]")
    echo = {"command": "scan", "kappa_range": args.kappa_range, **_num_cfg(cfg)}
    rows, actions = [], []
    for k in kappas:
        prof = integrate_phi(cfg["m"], float(k), epsilon=cfg["epsilon"],
                             r_max=cfg["rmax"], tol=cfg["tol"],
                             series_order=cfg["series_order"])
        rep = observable_report(prof)
        rows.append((float(k), prof.classification.tag.value, rep.S, rep.S_lo,
                     rep.S_hi, rep.C_kappa, rep.q_electric))
        actions.append(rep.S)
    write_csv(out / "scan.csv",
              ["kappa", "class", "S", "S_lo", "S_hi", "C", "q_e"], rows, config=echo)
    if not args.no_figures:
        from .figures import render_action_curve
        render_action_curve(kappas, actions, out / "action_curve.png")
    n_fin = sum(1 for r in rows if r[1] == SolutionTag.FINITE_ACTION.value)
    print(f"{len(rows)} points, {n_fin} finite-action")
    return EXIT_OK


def cmd_map(args) -> int:
    cfg = _settings(args)
    out = Path(cfg["out"])
    m, kappa = cfg["m"], args.kappa
    series = mapping_coefficients(m, kappa, order=cfg["map_order"])
    echo = {"command": "map", "kappa": kappa, **_num_cfg(cfg)}
    write_csv(out / "coefficients.csv", ["n", "b_n"],
              enumerate(series.b), config=echo)

    horizon = derive_horizon_series(m, -1, kappa / (16.0 * m**3),
                                    order=cfg["series_order"])
    prof = integrate_phi(m, kappa, epsilon=cfg["epsilon"], r_max=cfg["rmax"],
                         tol=cfg["tol"], series_order=cfg["series_order"])
    r = np.linspace(prof.r_min, min(20.0 * m, prof.r_max), 400)
    phi_map, _ = series.eval(r)
    phi_hor, _ = horizon.eval(r - 2.0 * m)
    phi_num, _ = prof(r)
    write_csv(out / "comparison.csv",
              ["r", "phi_horizon_series", "phi_mapped", "phi_numeric"],
              zip(r, phi_hor, phi_map, phi_num), config=echo)

    max_dev = float(np.max(np.abs(phi_map - phi_num)))
    diag = None
    if series.order >= 100:
        diag = coefficient_diagnostics(series)
    summary = {
        "kappa": kappa, "m": m, "map_order": series.order,
        "max_abs_dev_mapped_vs_numeric": max_dev,
        "series_reliable": None if diag is None else diag.reliable,
        "trailing_coeff_max": None if diag is None else diag.trailing_max,
    }
    write_json(out / "map_summary.json", summary)
    if not args.no_figures:
        from .figures import render_coefficients, render_map_comparison
        render_map_comparison(r, phi_hor, phi_map, phi_num, out / "comparison.png")
        render_coefficients(series.b, out / "coefficients.png")
    print(f"max |mapped - numeric| = {max_dev:.3e}")
    if diag is not None and not diag.reliable:
        print(f"series unreliable for kappa = {kappa} (growing coefficients)",
              file=sys.stderr)
        return EXIT_PROPERTY_FAILURE
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = _settings(args)
    out = Path(cfg["out"])
    pairs = None
    if args.pairs:
        try:
            k1, k2 = (float(x) for x in args.pairs.split(","))
        except ValueError:
            raise SystemExit(f"bad --pairs (want 'k1,k2'): {args.pairs!r}")
        pairs = [(k1, k2)]
    reports = run_suite(m=cfg["m"], tol=cfg["tol"], pairs=pairs,
                        dphi_shift=args.inject_dphi,
                        include_family_scan=args.family_scan)
    write_json(out / "properties.json", {"reports": [r.to_dict() for r in reports]})
    width = max(len(r.property_id) for r in reports)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.property_id:<{width}}  {r.params}  margin={r.margin:.3e}")
    n_fail = sum(1 for r in reports if not r.passed)
    print(f"{len(reports) - n_fail}/{len(reports)} properties passed")
    return EXIT_OK if n_fail == 0 else EXIT_PROPERTY_FAILURE


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"solve": cmd_solve, "scan": cmd_scan,
               "map": cmd_map, "check": cmd_check}[args.command]
    try:
        return handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
