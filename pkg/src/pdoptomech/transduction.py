"""Figures of merit and design rules for an optomechanical transducer.

Cavity 1 is the input port and cavity 2 the output port. Functions taking a
scattering matrix ``t`` accept a single ``(6, 6)`` matrix or a stack of shape
``(n, 6, 6)`` and broadcast accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import NoPhysicalSqueezingError, ZeroReflectionError, ZeroTransmissionError
from .squeeze import SqueezeParams, drive_from_squeeze, lab_from_dressed
from .system import (
    DressedParams,
    Mode,
    Spectrum,
    SystemParams,
    build_coupling_matrix,
    build_dressed_matrix,
    build_dynamical_matrix,
    scattering,
)

__all__ = [
    "BathSpec",
    "TransducerDesign",
    "NoiseBudget",
    "conversion_efficiency",
    "conjugate_ratio",
    "added_noise",
    "added_noise_lower_bound",
    "optimal_pd_transduction",
    "gamma_rate",
    "impedance_match_modified",
    "lorentzian_eta",
    "optimal_output_squeeze_phase",
    "teleportation_noise",
    "optimal_teleport_phases",
    "design_transducer",
    "noise_budget",
    "db_to_squeeze",
]


def db_to_squeeze(db: float) -> float:
    """Squeeze parameter ``s`` for a noise reduction of ``db`` decibels (``e^{-2s} = 10^{-db/10}``)."""
    return float(db * np.log(10) / 20)


@dataclass(frozen=True)
class BathSpec:
    """Input noise on the output cavity: vacuum (``s = 0``) or broadband squeezed vacuum.

    Correlations per unit time are ``<A^dag A> = sinh^2 s`` and
    ``<A A> = e^{i vartheta} sinh s cosh s``.
    """

    s: float = 0.0
    vartheta: float = 0.0

    def __post_init__(self):
        if self.s < 0:
            raise ValueError(f"squeeze strength must be non-negative, got {self.s}")

    @classmethod
    def vacuum(cls) -> "BathSpec":
        return cls(0.0, 0.0)

    @property
    def is_vacuum(self) -> bool:
        return self.s == 0


@dataclass(frozen=True)
class TransducerDesign:
    """A complete transducer operating point.

    Attributes:
        gamma1, gamma2: net optical damping rates of the mechanics.
        omega0: refined operating frequency (maximum of the corrected efficiency).
        omega0_analytic: leading-order ``omega_m - (k1 G1 + k2 G2) / 8 omega_m``.
        squeeze1: parametric-drive squeeze of cavity 1 (``r = 0`` without drive).
        matched: ``"standard"`` (``gamma1 == gamma2``) or ``"modified"``.
        dressed: dressed-frame parameters shared by all drive choices.
        system: lab-frame parameters realizing the design.
    """

    gamma1: float
    gamma2: float
    omega0: float
    omega0_analytic: float
    squeeze1: SqueezeParams
    matched: str
    dressed: DressedParams
    system: SystemParams


@dataclass(frozen=True)
class NoiseBudget:
    eta: Spectrum
    conj_ratio: Spectrum
    added_noise: Spectrum
    lower_bound: Spectrum


def _row2(t):
    t = np.asarray(t)
    return (
        t[..., Mode.A2, Mode.A1],
        t[..., Mode.A2, Mode.A1_DAG],
        t[..., Mode.A2, Mode.A2],
        t[..., Mode.A2, Mode.A2_DAG],
    )


def conversion_efficiency(t):
    """``eta = |T_{2,1}|^2``."""
    return np.abs(np.asarray(t)[..., Mode.A2, Mode.A1]) ** 2


def _eta_checked(t21):
    eta = np.abs(t21) ** 2
    if np.any(eta == 0):
        raise ZeroTransmissionError("T_{2,1} vanishes")
    return eta


def conjugate_ratio(t):
    """``R = |T_{2,1dag}|^2 / |T_{2,1}|^2``, the phase-conjugating (amplifying) transmission."""
    t21, t21d, _, _ = _row2(t)
    return np.abs(t21d) ** 2 / _eta_checked(t21)


def added_noise(t, bath2: BathSpec = BathSpec()):
    """Input-referred added noise ``S`` with vacuum at port 1 and ``bath2`` at port 2."""
    t21, t21d, t22, t22d = _row2(t)
    eta = _eta_checked(t21)
    c2s, s2s = np.cosh(2 * bath2.s), np.sinh(2 * bath2.s)
    reflected = 0.5 * (np.abs(t22) ** 2 + np.abs(t22d) ** 2) * c2s
    reflected = reflected + np.real(t22 * np.conj(t22d) * np.exp(1j * bath2.vartheta)) * s2s
    return (0.5 * np.abs(t21d) ** 2 + reflected) / eta


def added_noise_lower_bound(eta, conj_ratio):
    """Minimum added noise compatible with bosonic commutation for given ``eta`` and ``R``."""
    eta = np.asarray(eta, dtype=float)
    return conj_ratio / 2 + np.abs((1 - eta) / (2 * eta) + conj_ratio / 2)


def optimal_pd_transduction(t_dressed) -> SqueezeParams:
    """Parametric-drive squeeze that nulls the lab ``T_{2,1dag}`` at one frequency.

    Solves ``e^{2i phi} e^{i theta} tanh r = T~_{2,1dag} / T~_{2,1}`` where
    ``phi`` is the dependent Bogoliubov phase. ``theta`` follows in closed form
    from ``e^{i theta} = (w + tanh r) / (1 + w tanh r)`` with ``w`` the phase of
    the ratio.

    Raises:
        NoPhysicalSqueezingError: if ``|T~_{2,1dag} / T~_{2,1}| >= 1``.
    """
    t21, t21d, _, _ = _row2(t_dressed)
    if t21 == 0:
        raise ZeroTransmissionError("dressed T_{2,1} vanishes")
    ratio = complex(t21d / t21)
    tr = abs(ratio)
    if tr >= 1:
        raise NoPhysicalSqueezingError(f"|T21dag/T21| = {tr:.6g} >= 1")
    if tr == 0:
        return SqueezeParams(0.0, 0.0, 0.0, 1 + 0j)
    w = ratio / tr
    z = (w + tr) / (1 + tr * w)
    return SqueezeParams.from_r_theta(float(np.arctanh(tr)), float(np.angle(z)))


def gamma_rate(g_tilde: float, kappa: float, omega_m: float = 1.0) -> float:
    """Net optical damping of the mechanics by one resonant cavity."""
    q = (kappa / (4 * omega_m)) ** 2
    return float(4 * g_tilde**2 / kappa * (1 - q / (1 + q)))


def _g_tilde_for_rate(gamma: float, kappa: float, omega_m: float) -> float:
    q = (kappa / (4 * omega_m)) ** 2
    return float(np.sqrt(gamma * kappa * (1 + q) / 4))


def impedance_match_modified(gamma2: float, kappa2: float, omega_m: float = 1.0) -> tuple[float, float]:
    """Input damping rates giving unit peak efficiency despite conjugate gain.

    With ``x = gamma1 / gamma2`` the condition is ``x^2 - (2 + 4q) x + 1 = 0``,
    ``q = (kappa2 / 4 omega_m)^2``. Returns ``(gamma2 * x_big, gamma2 * x_small)``;
    the two roots are reciprocal.
    """
    q = (kappa2 / (4 * omega_m)) ** 2
    b = 2 + 4 * q
    disc = np.sqrt(b * b - 4)
    return float(gamma2 * (b + disc) / 2), float(gamma2 * (b - disc) / 2)


def lorentzian_eta(omega, gamma1: float, gamma2: float, omega0: float,
                   kappa2: float, omega_m: float = 1.0):
    """Weak-coupling Lorentzian approximation to the drive-corrected efficiency."""
    omega = np.asarray(omega, dtype=float)
    peak = 1 + (kappa2 / (4 * omega_m)) ** 2
    half = 0.5 * (gamma1 + gamma2)
    return peak * gamma1 * gamma2 / ((omega - omega0) ** 2 + half**2)


def optimal_output_squeeze_phase(t) -> float:
    """Squeezing phase ``arg(-T_{2,2dag} / T_{2,2})`` that minimizes added noise."""
    _, _, t22, t22d = _row2(t)
    if t22 == 0:
        raise ZeroReflectionError("T_{2,2} vanishes")
    return float(np.angle(-t22d / t22))


def teleportation_noise(t, r_t: float, s: float, vartheta: float, phi_t: float):
    """Added noise of teleportation-based transduction with an EPR resource of strength ``r_t``.

    ``s`` and ``vartheta`` describe squeezed vacuum injected into the output
    cavity; ``phi_t`` is the beam-splitter phase.
    """
    if r_t < 0 or s < 0:
        raise ValueError("squeeze strengths must be non-negative")
    t21, t21d, t22, t22d = _row2(t)
    ch, sh = np.cosh(r_t), np.sinh(r_t)
    ep = np.exp(1j * phi_t)
    out = np.abs(ch + ep * np.conj(t21) * sh) ** 2
    out = out + np.abs(sh + ep * np.conj(t21) * ch) ** 2
    out = out + np.abs(t21d) ** 2 * (ch**2 + sh**2)
    out = out + np.abs(np.exp(1j * vartheta) * np.sinh(s) * t22 + np.cosh(s) * t22d) ** 2
    return out + 0.5 * (np.abs(t22) ** 2 - np.abs(t22d) ** 2)


def optimal_teleport_phases(t) -> tuple[float, float]:
    """Output-squeeze and beam-splitter phases ``(vartheta, phi_t)`` minimizing teleportation noise."""
    t21, _, t22, t22d = _row2(t)
    if t21 == 0:
        raise ZeroTransmissionError("T_{2,1} vanishes")
    if t22 == 0:
        raise ZeroReflectionError("T_{2,2} vanishes")
    return float(np.angle(-t22d / t22)), float(np.angle(-t21))


def _refine_peak(fun, center: float, half_width: float) -> float:
    res = minimize_scalar(
        lambda w: -fun(w),
        bounds=(center - half_width, center + half_width),
        method="bounded",
        options={"xatol": 1e-12 * max(1.0, abs(center))},
    )
    return float(res.x)


def _operating_point(d: DressedParams, pd: bool, omega0_a: float, width: float):
    h_d, k = build_dressed_matrix(d), build_coupling_matrix(d)

    def corrected_eta(w):
        t = scattering(h_d, k, w)
        eta = abs(t[Mode.A2, Mode.A1]) ** 2
        return eta - abs(t[Mode.A2, Mode.A1_DAG]) ** 2 if pd else eta

    omega0 = _refine_peak(corrected_eta, omega0_a, width)
    return omega0, corrected_eta(omega0), scattering(h_d, k, omega0)


def design_transducer(kappa1: float = 5.0, kappa2: float = 5.0, g_tilde2: float = 0.1,
                      omega_m: float = 1.0, pd: bool = True, matching: str = "modified",
                      root: str = "primary", refine: bool = True, gamma: float = 0.0,
                      allow_gamma: bool = False, g_tilde1: float | None = None) -> TransducerDesign:
    """Build a resonant transducer (``delta_tilde1 = delta_tilde2 = omega_m``).

    Args:
        pd: apply the parametric drive that nulls ``T_{2,1dag}`` at ``omega0``.
        matching: ``"standard"`` sets ``gamma1 = gamma2``; ``"modified"`` picks
            ``gamma1`` so the peak efficiency is one; ``"explicit"`` uses ``g_tilde1``.
        root: ``"primary"`` (``gamma1 > gamma2``) or ``"alternate"`` for the
            modified matching.
        refine: for modified matching, tune ``g_tilde1`` from the weak-coupling
            root until the full-matrix peak efficiency is exactly one.
        gamma: intrinsic mechanical damping; must be zero unless ``allow_gamma``.
        g_tilde1: dressed input coupling, required for explicit matching.
    """
    if gamma != 0 and not allow_gamma:
        raise ValueError("transducer designs neglect mechanical loss; pass allow_gamma=True to override")
    if matching not in ("standard", "modified", "explicit"):
        raise ValueError(f"unknown matching {matching!r}")
    if (matching == "explicit") != (g_tilde1 is not None):
        raise ValueError("g_tilde1 must be given exactly when matching='explicit'")
    if root not in ("primary", "alternate"):
        raise ValueError(f"unknown root {root!r}")
    gamma2 = gamma_rate(g_tilde2, kappa2, omega_m)
    if matching == "standard":
        gamma1 = gamma2
    elif matching == "explicit":
        gamma1 = gamma_rate(g_tilde1, kappa1, omega_m)
    else:
        big, small = impedance_match_modified(gamma2, kappa2, omega_m)
        gamma1 = big if root == "primary" else small

    def dressed(g1):
        return DressedParams(omega_m, g1, kappa1, omega_m, g_tilde2, kappa2, omega_m, gamma)

    def operating_point(g1):
        rate1 = gamma_rate(g1, kappa1, omega_m)
        w0_a = omega_m - (kappa1 * rate1 + kappa2 * gamma2) / (8 * omega_m)
        return (w0_a,) + _operating_point(dressed(g1), pd, w0_a, rate1 + gamma2)

    if g_tilde1 is None:
        g_tilde1 = _g_tilde_for_rate(gamma1, kappa1, omega_m)
    if matching == "modified" and refine:
        g_tilde1 = brentq(lambda g1: operating_point(g1)[2] - 1.0,
                          0.8 * g_tilde1, 1.25 * g_tilde1, xtol=1e-14, rtol=1e-13)
        gamma1 = gamma_rate(g_tilde1, kappa1, omega_m)
    d = dressed(g_tilde1)
    omega0_a, omega0, _, t_dressed = operating_point(g_tilde1)
    if pd:
        s1 = optimal_pd_transduction(t_dressed)
        _, lam1 = drive_from_squeeze(s1, d.delta_tilde1)
    else:
        s1, lam1 = SqueezeParams(0.0), 0j
    system = lab_from_dressed(d, lam1)
    return TransducerDesign(gamma1, gamma2, omega0, omega0_a, s1, matching, d, system)


def noise_budget(p: SystemParams, omegas, bath2: BathSpec = BathSpec()) -> NoiseBudget:
    """Efficiency, conjugate ratio, added noise and its lower bound on a frequency grid."""
    omegas = np.asarray(omegas, dtype=float)
    t = scattering(build_dynamical_matrix(p), build_coupling_matrix(p), omegas)
    eta = conversion_efficiency(t)
    ratio = conjugate_ratio(t)
    return NoiseBudget(
        Spectrum(omegas, eta, "eta"),
        Spectrum(omegas, ratio, "conj_ratio"),
        Spectrum(omegas, added_noise(t, bath2), "S"),
        Spectrum(omegas, added_noise_lower_bound(eta, ratio), "S_lower_bound"),
    )
