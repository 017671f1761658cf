"""Matplotlib renderers for the report path; every figure is written to file
next to its delimited data."""
from __future__ import annotations

from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def render_profile(profile, path: Path):
    """Linear and semilog views of phi along the radius."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(profile.grid, profile.phi)
    ax1.set_xlabel("r")
    ax1.set_ylabel(r"$\phi(r)$")
    ax1.set_xlim(profile.r_min, min(profile.r_max, 20 * profile.m))
    s = profile.grid - 2 * profile.m
    ax2.semilogx(s, profile.phi)
    ax2.set_xlabel("r - 2m")
    ax2.set_ylabel(r"$\phi$")
    title = f"m={profile.m:g}"
    if profile.kappa is not None:
        title += f", kappa={profile.kappa:g}"
    fig.suptitle(f"{title} [{profile.classification}]")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_action_curve(kappas, actions, path: Path):
    fig, ax = plt.subplots(figsize=(6, 4))
    k = np.asarray(kappas, dtype=float)
    S = np.array([np.nan if s is None else s for s in actions], dtype=float)
    ax.plot(k, S, "o-")
    ax.set_xlabel(r"$\kappa$")
    ax.set_ylabel("S")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_map_comparison(r, phi_series, phi_mapped, phi_numeric, path: Path):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(r, phi_numeric, "k--", label="numeric")
    ax.plot(r, phi_mapped, "r:", label="mapped series")
    ax.plot(r, phi_series, "b-", lw=0.8, label="horizon series")
    ax.set_xlabel("r")
    ax.set_ylabel(r"$\phi$")
    lo = np.nanmin(phi_numeric)
    ax.set_ylim(lo - 0.1 * abs(lo), 0.35)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_coefficients(b, path: Path, stride: int | None = None):
    fig, ax = plt.subplots(figsize=(6, 4))
    b = np.asarray(b)
    n = np.arange(len(b))
    if stride is None:
        stride = max(1, len(b) // 2000)
    ax.plot(n[::stride], b[::stride], ".", ms=2)
    ax.set_xlabel("n")
    ax.set_ylabel(r"$b_n$")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
