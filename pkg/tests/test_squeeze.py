import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pdoptomech import (
    DiagonalizationError,
    DressedParams,
    Mode,
    NotSqueezeLikeError,
    SqueezeParams,
    bogoliubov_from_drive,
    build_coupling_matrix,
    build_dressed_matrix,
    build_dynamical_matrix,
    cooling_system,
    drive_from_squeeze,
    dressed_params,
    effective_squeezing,
    lab_from_dressed,
    scattering,
    squeeze_matrix,
    susceptibility,
)
from pdoptomech.audit import Z_DIAG, frame_error, random_dressed, random_system

M = Mode


def test_no_drive_is_identity_transform():
    s = bogoliubov_from_drive(1.0, 0j)
    assert (s.r, s.theta, s.phi, s.mu) == (0.0, 0.0, 0.0, 1 + 0j)


def test_real_drive():
    s = bogoliubov_from_drive(1.0, 0.6)
    assert s.r == pytest.approx(np.arctanh(0.6) / 2, rel=1e-15)
    assert s.theta == 0.0
    assert s.mu == pytest.approx(np.cosh(s.r) - np.sinh(s.r))


def test_negative_real_drive():
    s = bogoliubov_from_drive(1.0, -0.6)
    assert s.theta == pytest.approx(np.pi)
    assert s.mu == pytest.approx(np.cosh(s.r) + np.sinh(s.r), rel=1e-14)
    assert s.phi == pytest.approx(0.0, abs=1e-15)


def test_tanh_ratio_recovers_drive():
    s = bogoliubov_from_drive(2.0, 0.7 - 1.1j)
    assert s.tanh_ratio == pytest.approx((0.7 - 1.1j) / 2.0, rel=1e-14)


@pytest.mark.parametrize("delta, lam", [(1.0, 1.0), (1.0, 2.0), (0.0, 0.1), (-1.0, 0.1)])
def test_bogoliubov_rejects(delta, lam):
    with pytest.raises(DiagonalizationError):
        bogoliubov_from_drive(delta, lam)


@given(st.floats(0, 3), st.floats(-np.pi, np.pi))
def test_mu_modulus_identity(r, theta):
    s = SqueezeParams.from_r_theta(r, theta)
    assert abs(s.mu) ** 2 == pytest.approx(np.cosh(2 * r) - np.sinh(2 * r) * np.cos(theta), rel=1e-10)
    assert abs(s.mu) ** 2 >= np.exp(-2 * r) * (1 - 1e-12)
    # the phase choice makes |mu| = e^{i phi} mu real positive
    assert np.exp(1j * s.phi) * s.mu == pytest.approx(abs(s.mu), abs=1e-12 * np.cosh(r))


@given(st.floats(0.1, 5), st.floats(0, 0.95), st.floats(-np.pi, np.pi))
def test_drive_squeeze_round_trip(delta_tilde, rho, phase):
    lam = delta_tilde * rho / np.sqrt(1 - rho**2) * np.exp(1j * phase)
    delta = np.hypot(delta_tilde, abs(lam))
    s = bogoliubov_from_drive(delta, lam)
    d2, lam2 = drive_from_squeeze(s, delta_tilde)
    assert d2 == pytest.approx(delta, rel=1e-12)
    assert abs(lam2 - lam) <= 1e-12 * max(1.0, abs(lam))


def test_squeeze_matrix_identity_at_zero():
    np.testing.assert_array_equal(squeeze_matrix(SqueezeParams(0.0)), np.eye(6))


@given(st.floats(0, 3), st.floats(-np.pi, np.pi))
def test_squeeze_matrix_symplectic(r, theta):
    f = squeeze_matrix(SqueezeParams.from_r_theta(r, theta))
    assert abs(f[0, 0]) ** 2 - abs(f[0, 1]) ** 2 == pytest.approx(1.0, abs=1e-9 * np.cosh(r) ** 2)
    z = np.diag(Z_DIAG)
    np.testing.assert_allclose(f @ z @ f.conj().T, z, atol=1e-9 * np.cosh(r) ** 2)


@given(st.integers(0, 2**32 - 1))
def test_scattering_frame_equivalence(seed):
    rng = np.random.default_rng(seed)
    p = random_system(rng, drive2=False)
    assert frame_error(p, rng.uniform(-4, 4, 5)) < 1e-9


def test_frame_equivalence_fails_with_printed_phase_convention(rng):
    """Using e^{i phi} = mu/|mu| instead of its conjugate breaks the equivalence."""
    p = random_system(rng, drive2=False)
    s = bogoliubov_from_drive(p.cavity1.delta, p.cavity1.lam)
    flipped = SqueezeParams(s.r, s.theta, -s.phi, s.mu)
    k = build_coupling_matrix(p)
    w = 0.9
    t_lab = scattering(build_dynamical_matrix(p), k, w)
    t_dr = scattering(build_dressed_matrix(dressed_params(p)), k, w)
    f = squeeze_matrix(flipped)
    assert np.max(np.abs(t_lab - np.linalg.solve(f, t_dr) @ f)) > 1e-3


@given(st.integers(0, 2**32 - 1))
def test_mechanical_columns_invariant_under_retuning(seed):
    rng = np.random.default_rng(seed)
    d = random_dressed(rng)
    lam = 0.8 * d.delta_tilde1 * np.exp(1j * rng.uniform(-np.pi, np.pi))
    ws = rng.uniform(-3, 3, 4)
    cols = []
    for drive in (0j, lam):
        p = lab_from_dressed(d, drive)
        t = scattering(build_dynamical_matrix(p), build_coupling_matrix(p), ws)
        cols.append(t[:, M.A2, [M.M, M.M_DAG]])
    np.testing.assert_allclose(cols[0], cols[1], atol=1e-10)


def test_lab_from_dressed_without_drive():
    d = DressedParams(1.2, 0.3, 2.0, 0.8, 0.1, 1.0)
    p = lab_from_dressed(d)
    assert (p.cavity1.delta, p.cavity1.g, p.cavity2.delta, p.cavity2.g) == (1.2, 0.3, 0.8, 0.1)


def test_cooling_detuning_from_dressed_target():
    kappa = 5.0
    lam = kappa**2 / 8 - 0.5j * kappa
    p = lab_from_dressed(DressedParams(1.0, 0.1, kappa), lam)
    assert p.cavity1.delta == pytest.approx(1 + kappa**2 / 8, rel=1e-14)


def test_effective_squeezing_zero():
    x = np.zeros((6, 6), dtype=complex)
    x[M.M, M.A1] = 0.3 + 0.4j
    assert effective_squeezing(x).r == 0.0


def test_effective_squeezing_rejects_amplifying_form():
    x = np.zeros((6, 6), dtype=complex)
    x[M.M, M.A1], x[M.M, M.A1_DAG] = 0.2, 0.3
    with pytest.raises(NotSqueezeLikeError):
        effective_squeezing(x)


def test_standard_cooling_is_squeezed():
    p = cooling_system(5.0)
    x = susceptibility(build_dynamical_matrix(p), build_coupling_matrix(p), 1.0)
    assert effective_squeezing(x).r > 0


def test_effective_squeezing_reconstructs_inputs(rng):
    p = cooling_system(2.0)
    x = susceptibility(build_dynamical_matrix(p), build_coupling_matrix(p), np.linspace(0.5, 1.5, 11))
    es = effective_squeezing(x)
    xa, xb = x[:, M.M, M.A1], x[:, M.M, M.A1_DAG]
    norm = np.sqrt(np.abs(xa) ** 2 - np.abs(xb) ** 2)
    np.testing.assert_allclose(np.cosh(es.r) ** 2 - np.sinh(es.r) ** 2, 1.0, atol=1e-12)
    np.testing.assert_allclose(np.exp(1j * es.phi) * np.cosh(es.r) * norm, xa, atol=1e-12)
    np.testing.assert_allclose(np.exp(1j * (es.phi + es.theta)) * np.sinh(es.r) * norm, xb, atol=1e-12)


@pytest.mark.parametrize("kappa", [0.5, 2.0, 5.0])
def test_drive_matches_effective_squeezing(kappa):
    p = cooling_system(kappa, pd=True)
    d = dressed_params(p)
    x = susceptibility(build_dressed_matrix(d), build_coupling_matrix(d), 1.0)
    es = effective_squeezing(x)
    s = bogoliubov_from_drive(p.cavity1.delta, p.cavity1.lam)
    assert es.r == pytest.approx(s.r, rel=1e-10)
    assert np.exp(1j * (2 * s.phi + s.theta)) == pytest.approx(np.exp(1j * es.theta), abs=1e-10)
