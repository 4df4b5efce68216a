"""Where does a driven optomechanical system stop being stable?

Run with ``python3 demos/stability_map.py``.

Two independent verdicts are compared: the eigenvalues of the dynamical
matrix and a Routh-Hurwitz test on its characteristic polynomial. For a
single dressed cavity there is also a closed-form coupling threshold.
"""

import numpy as np

from pdoptomech import (
    DressedParams,
    build_dressed_matrix,
    cooling_instability_threshold,
    eigenvalue_stable,
    routh_hurwitz_stable,
)

kappa = 1.0
for dt in (0.25, 0.5, 1.0, 2.0, 4.0):
    g_star = cooling_instability_threshold(DressedParams(dt, 0.0, kappa, gamma=1e-4))
    print(f"delta_tilde = {dt:4.2f}: threshold coupling G* = {g_star:.4f}")
    for frac in (0.9, 1.1):
        h = build_dressed_matrix(DressedParams(dt, frac * g_star, kappa, gamma=1e-4))
        eig = eigenvalue_stable(h)
        print(f"    G = {frac:.1f} G*: eigen says {'stable' if eig.stable else 'unstable':8s} "
              f"(max Re = {eig.max_eigen_real:+.2e}), Routh-Hurwitz says "
              f"{'stable' if routh_hurwitz_stable(h) else 'unstable'}")
