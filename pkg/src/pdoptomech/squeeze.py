"""Bogoliubov bookkeeping for parametrically driven cavities.

A cavity with detuning ``delta`` and parametric drive ``lam`` is diagonalized by

    alpha = e^{i phi} (cosh r a + e^{i theta} sinh r a^dag),
    e^{i theta} tanh 2r = lam / delta,   mu = cosh r - e^{i theta} sinh r.

The phase ``phi`` is fixed so that the dressed optomechanical coupling
``|mu| G`` is real and positive, which requires ``e^{i phi} = conj(mu) / |mu|``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotSqueezeLikeError
from .system import (
    CavityParams,
    DressedParams,
    Mode,
    SystemParams,
    _check_diagonalizable,
)

__all__ = [
    "SqueezeParams",
    "EffectiveSqueezing",
    "bogoliubov_from_drive",
    "drive_from_squeeze",
    "squeeze_matrix",
    "effective_squeezing",
    "lab_from_dressed",
]


@dataclass(frozen=True)
class SqueezeParams:
    """One-mode squeeze transform ``(r, theta, phi)`` and the derived ``mu``."""

    r: float
    theta: float = 0.0
    phi: float = 0.0
    mu: complex = 1 + 0j

    @classmethod
    def from_r_theta(cls, r: float, theta: float) -> "SqueezeParams":
        """Build the transform for given ``(r, theta)``, deriving ``mu`` and ``phi``."""
        if r < 0:
            raise ValueError(f"r must be non-negative, got {r}")
        theta = float(np.angle(np.exp(1j * theta))) if r > 0 else float(theta)
        mu = np.cosh(r) - np.exp(1j * theta) * np.sinh(r)
        return cls(float(r), theta, float(-np.angle(mu)), complex(mu))

    @property
    def tanh_ratio(self) -> complex:
        """``e^{i theta} tanh 2r``, the drive-to-detuning ratio."""
        return np.exp(1j * self.theta) * np.tanh(2 * self.r)


@dataclass(frozen=True)
class EffectiveSqueezing:
    """Squeezing ``(r_s, theta_s, phi_s)`` seen by the mechanics; scalars or per-frequency arrays."""

    r: np.ndarray | float
    theta: np.ndarray | float
    phi: np.ndarray | float


def bogoliubov_from_drive(delta: float, lam: complex) -> SqueezeParams:
    """Squeeze parameters that diagonalize a cavity with detuning ``delta`` and drive ``lam``.

    Raises:
        DiagonalizationError: if ``delta <= 0`` or ``|lam| / delta > 1 - 1e-12``.
    """
    lam = complex(lam)
    _check_diagonalizable(delta, lam, "cavity")
    if lam == 0:
        return SqueezeParams(0.0, 0.0, 0.0, 1 + 0j)
    r = 0.5 * np.arctanh(abs(lam) / delta)
    return SqueezeParams.from_r_theta(r, float(np.angle(lam / delta)))


def drive_from_squeeze(s: SqueezeParams, delta_tilde: float) -> tuple[float, complex]:
    """Lab detuning and drive ``(delta, lam)`` realizing ``s`` at dressed detuning ``delta_tilde``."""
    delta = delta_tilde * np.cosh(2 * s.r)
    lam = delta_tilde * np.sinh(2 * s.r) * np.exp(1j * s.theta)
    return float(delta), complex(lam)


def squeeze_matrix(s1: SqueezeParams) -> np.ndarray:
    """Bath transform ``F = diag(F1, I4)`` mapping lab inputs to dressed-frame inputs."""
    c, sh = np.cosh(s1.r), np.sinh(s1.r)
    eph, eth = np.exp(1j * s1.phi), np.exp(1j * s1.theta)
    f = np.eye(6, dtype=complex)
    f[Mode.A1, Mode.A1] = eph * c
    f[Mode.A1, Mode.A1_DAG] = -eph * eth * sh
    f[Mode.A1_DAG, Mode.A1] = -np.conj(eph * eth) * sh
    f[Mode.A1_DAG, Mode.A1_DAG] = np.conj(eph) * c
    return f


def effective_squeezing(x: np.ndarray) -> EffectiveSqueezing:
    """Squeezed normal form of the photonic drive on the mechanics.

    Args:
        x: susceptibility matrix, shape ``(6, 6)`` or ``(n, 6, 6)``.

    Raises:
        NotSqueezeLikeError: where ``|X_{m,1}| <= |X_{m,1^dag}|``.
    """
    xa = np.asarray(x)[..., Mode.M, Mode.A1]
    xb = np.asarray(x)[..., Mode.M, Mode.A1_DAG]
    norm2 = np.abs(xa) ** 2 - np.abs(xb) ** 2
    if np.any(norm2 <= 0):
        raise NotSqueezeLikeError("|X_{m,1}| <= |X_{m,1dag}|: no squeezed normal form")
    ratio = xb / xa
    r = np.arctanh(np.abs(ratio))
    theta = np.angle(ratio)
    phi = np.angle(xa)
    if np.ndim(r) == 0:
        return EffectiveSqueezing(float(r), float(theta), float(phi))
    return EffectiveSqueezing(r, theta, phi)


def lab_from_dressed(d: DressedParams, lambda1: complex = 0j, lambda2: complex = 0j) -> SystemParams:
    """Lab parameters that reproduce the dressed frame ``d`` with the given drives.

    The detuning is raised to ``sqrt(delta_tilde^2 + |lam|^2)`` and the coupling
    divided by ``|mu|`` so that :func:`~pdoptomech.system.dressed_params`
    returns ``d`` again.
    """
    cavs = []
    for dt, gt, kappa, lam in (
        (d.delta_tilde1, d.g_tilde1, d.kappa1, complex(lambda1)),
        (d.delta_tilde2, d.g_tilde2, d.kappa2, complex(lambda2)),
    ):
        delta = float(np.hypot(dt, abs(lam)))
        _check_diagonalizable(delta, lam, "cavity")
        mu_abs = np.sqrt((delta - lam.real) / dt)
        cavs.append(CavityParams(delta, lam, kappa, gt / mu_abs))
    return SystemParams(cavs[0], cavs[1], omega_m=d.omega_m, gamma=d.gamma)
