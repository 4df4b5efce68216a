"""The lab frame and the dressed (Bogoliubov) frame describe the same physics.

Run with ``python3 demos/squeezed_frames.py``.

A two-photon drive of strength lambda on a cavity with detuning Delta is
equivalent to an undriven cavity of detuning sqrt(Delta^2 - |lambda|^2)
whose mode is a squeezed combination of a and a^dag. Scattering matrices in
the two frames are related by the squeeze transform, and both preserve the
symplectic form ``T Z T^dag = Z``.
"""

import numpy as np

from pdoptomech import DressedParams, bogoliubov_from_drive, lab_from_dressed
from pdoptomech.audit import frame_error, pseudo_unitarity_error, random_system
from pdoptomech import build_coupling_matrix, build_dynamical_matrix, scattering

d = DressedParams(1.0, 0.3, 2.0, gamma=1e-3)
p = lab_from_dressed(d, lambda1=0.8 - 0.6j)
s = bogoliubov_from_drive(p.cavity1.delta, p.cavity1.lam)
print(f"lab detuning {p.cavity1.delta:.4f}, drive {p.cavity1.lam:.3f}")
print(f"squeeze r = {s.r:.4f}, theta = {s.theta:.4f}, phi = {s.phi:.4f}")

omegas = np.linspace(-3, 3, 7)
print("frame mismatch:", frame_error(p, omegas))

rng = np.random.default_rng(0)
worst = 0.0
for _ in range(100):
    q = random_system(rng)
    t = scattering(build_dynamical_matrix(q), build_coupling_matrix(q), omegas)
    worst = max(worst, pseudo_unitarity_error(t))
print("worst |T Z T^dag - Z| over 100 random driven systems:", worst)
