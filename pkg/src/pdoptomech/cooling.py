"""Backaction heating in single-cavity cooling, with and without parametric drive."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DiagonalizationError, NoPhysicalSqueezingError, UnstableSystemError
from .integrate import gauss_kronrod, lorentzian_breakpoints
from .squeeze import lab_from_dressed
from .stability import stability_report
from .system import (
    CavityParams,
    DressedParams,
    Mode,
    Spectrum,
    SystemParams,
    build_coupling_matrix,
    build_dynamical_matrix,
    dressed_params,
    susceptibility,
)

__all__ = [
    "CoolingResult",
    "InjectedSqueezingParams",
    "optimal_pd_cooling",
    "pd_cooling_detuning",
    "cooling_system",
    "require_stable",
    "backaction_spectrum",
    "backaction_occupancy",
    "quantum_backaction_limit",
    "injected_squeezing_params",
    "min_injected_squeezing",
    "is_min_squeezing",
    "resonant_bath_occupation",
]

#: Integration half-span in units of max(kappa1, omega_m).
SPAN_FACTOR = 50.0


@dataclass(frozen=True)
class CoolingResult:
    n_ba: float
    qba_limit: float
    spectrum: Spectrum | None
    params_used: SystemParams
    quad_error: float = 0.0


@dataclass(frozen=True)
class InjectedSqueezingParams:
    """Squeezed vacuum injected into the cooling cavity: strength and phase."""

    r_b: float
    theta_b: float

    def __post_init__(self):
        if self.r_b < 0:
            raise ValueError(f"r_b must be non-negative, got {self.r_b}")


def optimal_pd_cooling(delta1: float, omega_m: float, kappa1: float) -> complex:
    """Parametric drive ``lam1 = delta1 - omega_m - i kappa1/2`` that nulls chi_{m,1dag}(omega_m).

    Raises:
        DiagonalizationError: if the resulting ``|lam1| >= delta1``.
    """
    lam = complex(delta1 - omega_m, -kappa1 / 2)
    if not delta1 > 0 or abs(lam) >= delta1:
        raise DiagonalizationError(
            f"optimal drive |lam1|={abs(lam):.6g} is not below delta1={delta1:.6g}; "
            "increase the detuning"
        )
    return lam


def pd_cooling_detuning(delta_tilde1: float, omega_m: float, kappa1: float) -> float:
    """Lab detuning that, together with the optimal drive, gives dressed detuning ``delta_tilde1``.

    Solves ``delta^2 - (delta - omega_m)^2 - kappa1^2/4 = delta_tilde1^2``; for
    ``delta_tilde1 = omega_m`` this is ``omega_m + kappa1^2 / (8 omega_m)``.
    """
    return (delta_tilde1**2 + omega_m**2 + kappa1**2 / 4) / (2 * omega_m)


def cooling_system(kappa1: float, cooperativity: float = 10.0, gamma: float = 1e-5,
                   omega_m: float = 1.0, delta_tilde1: float | None = None,
                   pd: bool = False) -> SystemParams:
    """Single-cavity cooling set-up at fixed dressed dynamics.

    The dressed coupling is ``sqrt(cooperativity * kappa1 * gamma)``. With
    ``pd=False`` the lab system has no drive; with ``pd=True`` the detuning and
    drive are chosen so that the dressed frame is the same and the backaction
    susceptibility vanishes at ``omega_m``. Cavity 2 is left uncoupled.
    """
    dt = omega_m if delta_tilde1 is None else delta_tilde1
    d = DressedParams(dt, float(np.sqrt(cooperativity * kappa1 * gamma)), kappa1,
                      omega_m=omega_m, gamma=gamma)
    if not pd:
        return d.as_system()
    delta1 = pd_cooling_detuning(dt, omega_m, kappa1)
    return lab_from_dressed(d, optimal_pd_cooling(delta1, omega_m, kappa1))


def require_stable(p: SystemParams):
    """Raise :class:`UnstableSystemError` unless ``p`` is strictly stable."""
    report = stability_report(dressed_params(p))
    if not report.stable:
        kind = "marginally stable" if report.marginal else "unstable"
        raise UnstableSystemError(
            f"system is {kind}: max Re(sigma) = {report.max_eigen_real:.3e}"
        )
    return report


def _chi_m1dag_sq(p: SystemParams):
    h = build_dynamical_matrix(p)
    k = build_coupling_matrix(p)
    # Only column 1dag of (omega - H)^-1 is needed.
    col = np.zeros(6, dtype=complex)
    col[Mode.A1_DAG] = 1.0
    k11 = k[Mode.A1_DAG, Mode.A1_DAG]

    def f(omega):
        omega = np.asarray(omega, dtype=float)
        a = omega[:, None, None] * np.eye(6) - h
        x = np.linalg.solve(a, np.broadcast_to(col, omega.shape + (6,))[..., None])[..., 0]
        return np.abs(1j * x[:, Mode.M] * k11) ** 2

    return f, h


def backaction_spectrum(p: SystemParams, omegas) -> Spectrum:
    """``|chi_{m,1dag}(omega)|^2`` from the lab-frame susceptibility.

    Raises:
        UnstableSystemError: if ``p`` is not strictly stable.
    """
    require_stable(p)
    omegas = np.asarray(omegas, dtype=float)
    h = build_dynamical_matrix(p)
    x = susceptibility(h, build_coupling_matrix(p), omegas)
    return Spectrum(omegas, np.abs(x[:, Mode.M, Mode.A1_DAG]) ** 2, "|chi_m1dag|^2")


def backaction_occupancy(p: SystemParams, rtol: float = 1e-6) -> CoolingResult:
    """Backaction quanta ``(1/2pi) int |chi_{m,1dag}(omega)|^2 d omega``.

    The integral runs over ``|omega - omega_m| <= 50 max(kappa1, omega_m)``
    with panels placed around every eigenfrequency of ``H``; the remaining
    tails, which decay as ``omega^-4``, are added analytically.

    Raises:
        UnstableSystemError: if ``p`` is not strictly stable.
        QuadratureError: if ``rtol`` cannot be met.
    """
    require_stable(p)
    kappa1, om = p.cavity1.kappa, p.omega_m
    qba = quantum_backaction_limit(kappa1, om)
    if p.cavity1.g == 0:
        return CoolingResult(0.0, qba, None, p)
    f, h = _chi_m1dag_sq(p)
    nu = np.linalg.eigvals(h)
    span = SPAN_FACTOR * max(kappa1, om)
    lo, hi = om - span, om + span
    edges = lorentzian_breakpoints(nu.real, 2 * np.abs(nu.imag), lo, hi)
    tails = f(np.array([lo, hi])) * np.abs([lo, hi]) / 3.0
    floor = 2 * np.pi * rtol * 1e-6
    res = gauss_kronrod(f, edges, rtol=rtol, atol=floor)
    n_ba = (res.value + float(np.sum(tails))) / (2 * np.pi)
    return CoolingResult(n_ba, qba, None, p, res.error / (2 * np.pi))


def quantum_backaction_limit(kappa1: float, omega_m: float = 1.0) -> float:
    """Minimum backaction occupancy of standard cavity cooling at the optimal detuning."""
    return float((np.sqrt(1 + (kappa1 / (2 * omega_m)) ** 2) - 1) / 2)


def injected_squeezing_params(delta1: float, kappa1: float, omega_m: float = 1.0) -> InjectedSqueezingParams:
    """Injected squeezing that cancels the resonant backaction of an undriven cavity.

    Solves ``e^{i theta_b} tanh r_b = (omega_m - delta1 + i kappa1/2) / (omega_m + delta1 + i kappa1/2)``.

    Raises:
        NoPhysicalSqueezingError: if the right-hand side has modulus >= 1.
    """
    ratio = complex(omega_m - delta1, kappa1 / 2) / complex(omega_m + delta1, kappa1 / 2)
    if abs(ratio) >= 1:
        raise NoPhysicalSqueezingError(f"|tanh r_b| = {abs(ratio):.6g} >= 1")
    return InjectedSqueezingParams(float(np.arctanh(abs(ratio))), float(np.angle(ratio)))


def min_injected_squeezing(kappa1: float, omega_m: float = 1.0) -> float:
    """Smallest ``r_b`` that can null resonant backaction: ``asinh(kappa1 / 2 omega_m) / 2``."""
    return float(0.5 * np.arcsinh(kappa1 / (2 * omega_m)))


is_min_squeezing = min_injected_squeezing


def resonant_bath_occupation(chi_m1: complex, chi_m1dag: complex, r_b: float, theta_b: float) -> float:
    """Mean occupation of the squeezed bath mode driving the mechanics at resonance.

    ``chi_m1`` and ``chi_m1dag`` are the lab susceptibilities at ``omega_m``;
    the cavity input carries squeezed vacuum ``(r_b, theta_b)``.
    """
    num = abs(chi_m1 * np.exp(1j * theta_b) * np.sinh(r_b) + chi_m1dag * np.cosh(r_b)) ** 2
    return float(num / (abs(chi_m1) ** 2 - abs(chi_m1dag) ** 2))
