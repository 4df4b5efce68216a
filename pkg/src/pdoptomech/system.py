"""Linearized two-cavity optomechanics in the frequency domain.

All matrices act on the doubled mode vector ``(a1, a1^dag, m, m^dag, a2, a2^dag)``
and are plain ``(6, 6)`` complex numpy arrays. Index them with :class:`Mode`
rather than raw integers, e.g. ``T[Mode.A2, Mode.A1]``.

Frequencies and rates are in units of the mechanical frequency unless the
caller chooses otherwise; nothing here assumes ``omega_m == 1``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from .errors import DiagonalizationError, SingularMatrixError

__all__ = [
    "Mode",
    "CavityParams",
    "SystemParams",
    "DressedParams",
    "Spectrum",
    "Z_METRIC",
    "build_dynamical_matrix",
    "build_coupling_matrix",
    "dressed_params",
    "build_dressed_matrix",
    "susceptibility",
    "scattering",
]


class Mode(IntEnum):
    """Position of each operator in the doubled mode basis."""

    A1 = 0
    A1_DAG = 1
    M = 2
    M_DAG = 3
    A2 = 4
    A2_DAG = 5

    @property
    def partner(self) -> "Mode":
        """The conjugate operator (``A1 <-> A1_DAG`` etc.)."""
        return Mode(self.value ^ 1)

    @property
    def is_dagger(self) -> bool:
        return bool(self.value & 1)


_ANNIHILATORS = (Mode.A1, Mode.M, Mode.A2)

#: Commutator metric ``diag(1, -1, 1, -1, 1, -1)``; scattering preserves it.
Z_METRIC = np.diag([1.0, -1.0, 1.0, -1.0, 1.0, -1.0]).astype(complex)
Z_METRIC.setflags(write=False)


@dataclass(frozen=True)
class CavityParams:
    """Lab-frame parameters of one driven cavity.

    Attributes:
        delta: detuning of the cavity from its drive.
        lam: complex parametric-drive amplitude.
        kappa: energy damping rate.
        g: many-photon optomechanical coupling.
    """

    delta: float
    lam: complex = 0j
    kappa: float = 1.0
    g: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "delta", float(self.delta))
        object.__setattr__(self, "lam", complex(self.lam))
        object.__setattr__(self, "kappa", float(self.kappa))
        object.__setattr__(self, "g", float(self.g))
        if self.kappa < 0:
            raise ValueError(f"kappa must be non-negative, got {self.kappa}")
        if self.g < 0:
            raise ValueError(f"g must be non-negative, got {self.g}")


@dataclass(frozen=True)
class SystemParams:
    """Two cavities sharing one mechanical oscillator, in the lab frame."""

    cavity1: CavityParams
    cavity2: CavityParams = field(default_factory=lambda: CavityParams(delta=1.0))
    omega_m: float = 1.0
    gamma: float = 0.0

    def __post_init__(self):
        if not self.omega_m > 0:
            raise ValueError(f"omega_m must be positive, got {self.omega_m}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")
        if self.gamma >= 0.1 * self.omega_m:
            warnings.warn(
                f"gamma={self.gamma} is not small compared to omega_m={self.omega_m}",
                stacklevel=3,
            )

    @property
    def cavities(self) -> tuple[CavityParams, CavityParams]:
        return (self.cavity1, self.cavity2)


@dataclass(frozen=True)
class DressedParams:
    """Parameters of the Bogoliubov (dressed) frame, where no cavity is parametrically driven."""

    delta_tilde1: float
    g_tilde1: float
    kappa1: float
    delta_tilde2: float = 1.0
    g_tilde2: float = 0.0
    kappa2: float = 1.0
    omega_m: float = 1.0
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("delta_tilde1", "delta_tilde2", "omega_m"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        for name in ("g_tilde1", "g_tilde2", "kappa1", "kappa2", "gamma"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")

    def as_system(self) -> SystemParams:
        """The undriven lab system whose dynamics equal this dressed frame."""
        return SystemParams(
            CavityParams(self.delta_tilde1, 0j, self.kappa1, self.g_tilde1),
            CavityParams(self.delta_tilde2, 0j, self.kappa2, self.g_tilde2),
            omega_m=self.omega_m,
            gamma=self.gamma,
        )


@dataclass(frozen=True)
class Spectrum:
    """Values sampled on a strictly increasing frequency grid."""

    omegas: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        omegas = np.asarray(self.omegas, dtype=float)
        values = np.asarray(self.values)
        if omegas.ndim != 1 or values.shape != omegas.shape:
            raise ValueError("omegas and values must be 1-D arrays of equal length")
        if omegas.size > 1 and not np.all(np.diff(omegas) > 0):
            raise ValueError("frequency grid must be strictly increasing")
        object.__setattr__(self, "omegas", omegas)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.omegas.size


def _fill_conjugate_rows(h: np.ndarray) -> np.ndarray:
    # Row of b^dag is the conjugate-negation of the row of b.
    for i in _ANNIHILATORS:
        for j in _ANNIHILATORS:
            h[i.partner, j.partner] = -np.conj(h[i, j])
            h[i.partner, j] = -np.conj(h[i, j.partner])
    return h


def build_dynamical_matrix(p: SystemParams) -> np.ndarray:
    """Dynamical matrix ``H`` of the lab-frame Langevin equations ``da/dt = -iHa + KA_in``."""
    h = np.zeros((6, 6), dtype=complex)
    for cav, a, a_dag in ((p.cavity1, Mode.A1, Mode.A1_DAG), (p.cavity2, Mode.A2, Mode.A2_DAG)):
        h[a, a] = cav.delta - 0.5j * cav.kappa
        h[a, a_dag] = cav.lam
        h[a, Mode.M] = h[a, Mode.M_DAG] = cav.g
        h[Mode.M, a] = h[Mode.M, a_dag] = cav.g
    h[Mode.M, Mode.M] = p.omega_m - 0.5j * p.gamma
    return _fill_conjugate_rows(h)


def build_coupling_matrix(p: SystemParams | DressedParams) -> np.ndarray:
    """Diagonal bath coupling matrix ``K``; identical in the lab and dressed frames."""
    if isinstance(p, DressedParams):
        k1, k2 = p.kappa1, p.kappa2
    else:
        k1, k2 = p.cavity1.kappa, p.cavity2.kappa
    roots = np.sqrt([k1, k1, p.gamma, p.gamma, k2, k2])
    return np.diag(roots * np.array([-1j, 1j, -1j, 1j, -1j, 1j]))


def _check_diagonalizable(delta: float, lam: complex, which: str):
    if not delta > 0:
        raise DiagonalizationError(f"{which}: detuning must be positive, got {delta}")
    if not abs(lam) / delta <= 1.0 - 1e-12:
        raise DiagonalizationError(
            f"{which}: |lambda|={abs(lam):.6g} must be below the detuning {delta:.6g}"
        )


def dressed_params(p: SystemParams) -> DressedParams:
    """Map lab parameters to the Bogoliubov frame.

    Raises:
        DiagonalizationError: if a cavity has ``delta <= 0`` or ``|lam| >= delta``.
    """
    out = []
    for name, cav in (("cavity1", p.cavity1), ("cavity2", p.cavity2)):
        _check_diagonalizable(cav.delta, cav.lam, name)
        delta_t = np.sqrt(cav.delta**2 - abs(cav.lam) ** 2)
        # |mu|^2 = cosh 2r - sinh 2r cos(theta) = (delta - Re lam) / delta_tilde
        mu_abs = np.sqrt((cav.delta - cav.lam.real) / delta_t)
        out.append((delta_t, mu_abs * cav.g))
    (dt1, gt1), (dt2, gt2) = out
    return DressedParams(
        delta_tilde1=dt1,
        g_tilde1=gt1,
        kappa1=p.cavity1.kappa,
        delta_tilde2=dt2,
        g_tilde2=gt2,
        kappa2=p.cavity2.kappa,
        omega_m=p.omega_m,
        gamma=p.gamma,
    )


def build_dressed_matrix(d: DressedParams) -> np.ndarray:
    """Dressed-frame dynamical matrix: same form as ``H`` with no parametric drive."""
    return build_dynamical_matrix(d.as_system())


def _resolvent_solve(h: np.ndarray, rhs: np.ndarray, omega):
    omega = np.asarray(omega, dtype=float)
    eye = np.eye(6)
    a = omega[..., None, None] * eye - h
    b = np.broadcast_to(rhs, a.shape)
    try:
        return np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(f"omega*I - H is singular at omega={omega}") from exc


def susceptibility(h: np.ndarray, k: np.ndarray, omega) -> np.ndarray:
    """``X(omega) = i (omega I - H)^-1 K``.

    ``omega`` may be a scalar or an array; an array of shape ``(n,)`` gives a
    result of shape ``(n, 6, 6)``.
    """
    return 1j * _resolvent_solve(h, k, omega)


def scattering(h: np.ndarray, k: np.ndarray, omega) -> np.ndarray:
    """Input-output scattering matrix ``T(omega) = I + i K (omega I - H)^-1 K``."""
    return np.eye(6) + 1j * (k @ _resolvent_solve(h, k, omega))
