"""Random systems for property checks, and a one-line audit of each."""

from __future__ import annotations

import numpy as np

from .errors import DegenerateRouthError
from .squeeze import bogoliubov_from_drive, lab_from_dressed, squeeze_matrix
from .stability import eigenvalue_stable, routh_hurwitz_stable
from .system import (
    DressedParams,
    SystemParams,
    build_coupling_matrix,
    build_dressed_matrix,
    build_dynamical_matrix,
    dressed_params,
    scattering,
)

__all__ = ["random_dressed", "random_system", "frame_error", "pseudo_unitarity_error",
           "audit_system", "AUDIT_COLUMNS", "Z_DIAG"]

Z_DIAG = np.array([1, -1, 1, -1, 1, -1], dtype=float)

AUDIT_COLUMNS = ("index", "rh_stable", "eig_stable", "frame_error", "pseudo_unitarity_error")


def _log_uniform(rng, lo, hi):
    return float(np.exp(rng.uniform(np.log(lo), np.log(hi))))


def random_dressed(rng, gamma_range=(1e-4, 0.05)) -> DressedParams:
    """Dressed parameters with log-uniform detunings, couplings and rates."""
    gamma = 0.0 if gamma_range is None else _log_uniform(rng, *gamma_range)
    return DressedParams(
        _log_uniform(rng, 0.2, 5.0), _log_uniform(rng, 1e-3, 2.0), _log_uniform(rng, 0.01, 20.0),
        _log_uniform(rng, 0.2, 5.0), _log_uniform(rng, 1e-3, 2.0), _log_uniform(rng, 0.01, 20.0),
        1.0, gamma,
    )


def _random_drive(rng, delta_tilde: float, rho_max: float = 0.99) -> complex:
    # |lam| / delta = rho once delta = sqrt(delta_tilde^2 + |lam|^2)
    rho = rng.uniform(0.0, rho_max)
    return delta_tilde * rho / np.sqrt(1 - rho**2) * np.exp(1j * rng.uniform(-np.pi, np.pi))


def random_system(rng, drive2: bool = True, gamma_range=(1e-4, 0.05)) -> SystemParams:
    """Lab system whose drives have ``|lam| / delta`` uniform in [0, 0.99]."""
    d = random_dressed(rng, gamma_range)
    lam1 = _random_drive(rng, d.delta_tilde1)
    lam2 = _random_drive(rng, d.delta_tilde2) if drive2 else 0j
    return lab_from_dressed(d, lam1, lam2)


def frame_error(p: SystemParams, omegas) -> float:
    """Max-norm gap between lab scattering and ``F^-1 T~ F`` (cavity 2 undriven)."""
    if p.cavity2.lam != 0:
        raise ValueError("the frame map covers cavity 1 only; cavity 2 must be undriven")
    k = build_coupling_matrix(p)
    t_lab = scattering(build_dynamical_matrix(p), k, omegas)
    t_dr = scattering(build_dressed_matrix(dressed_params(p)), k, omegas)
    f = squeeze_matrix(bogoliubov_from_drive(p.cavity1.delta, p.cavity1.lam))
    mapped = np.linalg.solve(f, t_dr) @ f
    return float(np.max(np.abs(t_lab - mapped)))


def pseudo_unitarity_error(t) -> float:
    """``max |T Z T^dag - Z|`` over a stack of scattering matrices."""
    t = np.asarray(t)
    z = np.diag(Z_DIAG)
    return float(np.max(np.abs(t @ z @ np.conj(np.swapaxes(t, -1, -2)) - z)))


def audit_system(rng):
    """Stability verdicts and frame/unitarity errors for one random system.

    Returns ``(rh_stable, eig_stable, frame_error, pseudo_unitarity_error)``
    with ``rh_stable = -1`` when the Routh table is degenerate.
    """
    p = random_system(rng, drive2=False)
    h = build_dynamical_matrix(p)
    try:
        rh = int(routh_hurwitz_stable(h))
    except DegenerateRouthError:
        rh = -1
    eig = int(eigenvalue_stable(h).stable)
    omegas = np.sort(rng.uniform(-3.0, 3.0, 5))
    t = scattering(h, build_coupling_matrix(p), omegas)
    return rh, eig, frame_error(p, omegas), pseudo_unitarity_error(t)
