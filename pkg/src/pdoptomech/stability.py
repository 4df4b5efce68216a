"""Dynamical stability of the linearized equations of motion.

Two independent routes decide stability of ``da/dt = -iHa``:

* :func:`eigenvalue_stable` diagonalizes ``-iH`` directly.
* :func:`routh_hurwitz_stable` builds the characteristic polynomial by
  cofactor expansion and runs a Routh table on it, with no eigensolver.

Closed-form thresholds for the dressed frame live alongside them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DegenerateRouthError
from .system import DressedParams, build_dressed_matrix

__all__ = [
    "StabilityReport",
    "MARGINAL_TOL",
    "characteristic_polynomial",
    "eigenvalue_stable",
    "routh_hurwitz_stable",
    "stability_report",
    "cooling_instability_threshold",
    "transducer_instability_sufficient",
    "perturbative_mech_eigenvalue",
]

MARGINAL_TOL = 1e-12
_ROUTH_PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class StabilityReport:
    """Outcome of a stability analysis.

    Attributes:
        stable: True iff every eigenvalue of ``-iH`` has real part below ``-MARGINAL_TOL``.
        max_eigen_real: largest real part among the eigenvalues of ``-iH``.
        rh_verdict: Routh-Hurwitz verdict, or None if the table was degenerate.
        threshold_margin: ``threshold - g_tilde1`` for single-cavity dressed
            systems, None otherwise.
        marginal: True when ``|max_eigen_real| < MARGINAL_TOL``; such systems are
            reported unstable.
    """

    stable: bool
    max_eigen_real: float
    rh_verdict: bool | None = None
    threshold_margin: float | None = None
    marginal: bool = False


def eigenvalue_stable(h: np.ndarray) -> StabilityReport:
    """Stability from the spectrum of ``-iH``."""
    sigma = np.linalg.eigvals(-1j * np.asarray(h))
    max_re = float(np.max(sigma.real))
    return StabilityReport(
        stable=max_re < -MARGINAL_TOL,
        max_eigen_real=max_re,
        marginal=abs(max_re) < MARGINAL_TOL,
    )


def _subsets_of_size(n: int, size: int):
    for combo in combinations(range(n), size):
        yield sum(1 << c for c in combo)


def characteristic_polynomial(a: np.ndarray) -> np.ndarray:
    """Coefficients of ``det(A - sigma I)`` in ascending powers of ``sigma``.

    Computed by Laplace expansion along rows, memoized over column subsets.
    """
    a = np.asarray(a, dtype=complex).tolist()
    n = len(a)
    # minors[cols] = det of rows (n - popcount(cols)).. n-1 restricted to cols,
    # as a coefficient list of fixed length n + 1.
    minors = {0: [1.0 + 0j] + [0j] * n}
    for row in range(n - 1, -1, -1):
        size = n - row
        nxt = {}
        for cols in _subsets_of_size(n, size):
            total = [0j] * (n + 1)
            sign = 1.0
            for c in range(n):
                if not cols >> c & 1:
                    continue
                sub = minors[cols & ~(1 << c)]
                coef = sign * a[row][c]
                for k in range(size):
                    total[k] += coef * sub[k]
                if c == row:
                    for k in range(size):
                        total[k + 1] -= sign * sub[k]
                sign = -sign
            nxt[cols] = total
        minors = nxt
    return np.array(minors[(1 << n) - 1])


def _routh_first_column(desc: np.ndarray) -> np.ndarray:
    n = desc.size - 1
    width = n // 2 + 1
    rows = [np.zeros(width), np.zeros(width)]
    rows[0][: desc[0::2].size] = desc[0::2]
    rows[1][: desc[1::2].size] = desc[1::2]
    scale = np.max(np.abs(desc))
    for _ in range(n - 1):
        upper, lower = rows[-2], rows[-1]
        pivot = lower[0]
        if abs(pivot) <= _ROUTH_PIVOT_TOL * max(scale, np.max(np.abs(lower))):
            raise DegenerateRouthError(f"Routh pivot {pivot:.3e} vanished at row {len(rows) - 1}")
        nxt = np.zeros(width)
        nxt[:-1] = (pivot * upper[1:] - upper[0] * lower[1:]) / pivot
        rows.append(nxt)
    return np.array([row[0] for row in rows])


def routh_hurwitz_stable(h: np.ndarray) -> bool:
    """Routh-Hurwitz verdict for ``det(-iH - sigma I) = 0``.

    The conjugate-pair structure of ``H`` makes this polynomial real. If its
    coefficients are not real to 1e-9 relative, the eigenvalue test is used.

    Raises:
        DegenerateRouthError: when a pivot vanishes within 1e-12 (relative).
    """
    coeffs = characteristic_polynomial(-1j * np.asarray(h))
    scale = np.max(np.abs(coeffs))
    if np.max(np.abs(coeffs.imag)) > 1e-9 * scale:
        return eigenvalue_stable(h).stable
    desc = coeffs.real[::-1] / coeffs.real[-1]
    if abs(desc[-1]) <= _ROUTH_PIVOT_TOL * np.max(np.abs(desc)):
        raise DegenerateRouthError("constant coefficient vanishes (root at sigma = 0)")
    if desc[-1] < 0:
        # Product of roots has the wrong sign: an odd number of positive real roots.
        return False
    first = _routh_first_column(desc)
    return bool(np.all(first > 0))


def cooling_instability_threshold(d: DressedParams) -> float:
    """Dressed coupling above which the single-cavity cooling system is unstable."""
    dt, k = d.delta_tilde1, d.kappa1
    om, g = d.omega_m, d.gamma
    return float(np.sqrt((dt**2 + k**2 / 4) * (om**2 + g**2 / 4) / (4 * dt * om)))


def stability_report(d: DressedParams) -> StabilityReport:
    """Full report for a dressed system (stability is frame independent)."""
    h = build_dressed_matrix(d)
    eig = eigenvalue_stable(h)
    try:
        rh = routh_hurwitz_stable(h)
    except DegenerateRouthError:
        rh = None
    margin = None
    if d.g_tilde2 == 0:
        margin = cooling_instability_threshold(d) - d.g_tilde1
    return StabilityReport(eig.stable, eig.max_eigen_real, rh, margin, eig.marginal)


def transducer_instability_sufficient(d: DressedParams, verbatim: bool = False) -> bool:
    """Sufficient (not necessary) condition for two-cavity instability.

    Args:
        d: dressed parameters.
        verbatim: put ``kappa1`` in both Lorentzians instead of ``kappa2`` in
            the second; kept for comparison with that variant of the condition.
    """
    k_second = d.kappa1 if verbatim else d.kappa2
    lhs = d.g_tilde1**2 * d.delta_tilde1 / (d.delta_tilde1**2 + d.kappa1**2 / 4)
    lhs += d.g_tilde2**2 * d.delta_tilde2 / (d.delta_tilde2**2 + k_second**2 / 4)
    rhs = (d.omega_m**2 + d.gamma**2 / 4) / (4 * d.omega_m)
    return bool(lhs > rhs)


def perturbative_mech_eigenvalue(d: DressedParams) -> float:
    """Leading-order real part of the mechanical eigenvalue of ``-iH`` (weak coupling)."""
    om = d.omega_m
    out = -d.gamma / 2
    for gt, dt, k in ((d.g_tilde1, d.delta_tilde1, d.kappa1), (d.g_tilde2, d.delta_tilde2, d.kappa2)):
        den = ((dt - om) ** 2 + k**2 / 4) * ((dt + om) ** 2 + k**2 / 4)
        out -= 2 * gt**2 * k * dt * om / den
    return float(out)
