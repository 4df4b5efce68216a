"""Independent reference formulas used as test oracles.

None of these go through the 6x6 matrix machinery of the package.
"""

import numpy as np
from scipy.integrate import trapezoid


def chi_m1dag_closed_form(omega, delta1, lam1, kappa1, g1, omega_m=1.0, gamma=0.0):
    """Single-cavity backaction susceptibility in closed form.

    Differs from the matrix result by an overall sign, which drops out of
    every quantity built from ``|chi|^2``.
    """
    w = np.asarray(omega, dtype=float)
    num = np.sqrt(kappa1) * g1 * (lam1 + (w - delta1) + 0.5j * kappa1) * (w + omega_m + 0.5j * gamma)
    den = ((w + 0.5j * kappa1) ** 2 - delta1**2 + abs(lam1) ** 2) * ((w + 0.5j * gamma) ** 2 - omega_m**2)
    den = den - 4 * g1**2 * delta1 * omega_m + 2 * g1**2 * omega_m * 2 * np.real(lam1)
    return num / den


def n_ba_trapezoid(delta1, lam1, kappa1, g1, omega_m=1.0, gamma=0.0, points=1_000_000):
    """Brute-force backaction quanta: dense trapezoid plus analytic tails.

    The grid spans ``|omega - omega_m| <= 50 kappa1``. Beyond it
    ``|chi|^2 ~ c / omega^4``, whose tail integral is ``|chi(b)|^2 |b| / 3``.
    """
    lo, hi = omega_m - 50 * kappa1, omega_m + 50 * kappa1
    w = np.linspace(lo, hi, points)
    f = np.abs(chi_m1dag_closed_form(w, delta1, lam1, kappa1, g1, omega_m, gamma)) ** 2
    core = trapezoid(f, w)
    tails = f[0] * abs(lo) / 3 + f[-1] * abs(hi) / 3
    return (core + tails) / (2 * np.pi)


def two_by_two_resolvent(omega, delta, lam, kappa):
    """``(omega - h)^-1`` for a lone cavity block, by the adjugate formula."""
    a = omega - (delta - 0.5j * kappa)
    b = -lam
    c = np.conj(lam)
    d = omega - (-delta - 0.5j * kappa)
    det = a * d - b * c
    return np.array([[d, -b], [-c, a]]) / det
