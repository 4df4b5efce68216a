import numpy as np
import pytest

from oracles import chi_m1dag_closed_form, n_ba_trapezoid
from pdoptomech import (
    CavityParams,
    DiagonalizationError,
    DressedParams,
    Mode,
    NoPhysicalSqueezingError,
    SystemParams,
    UnstableSystemError,
    backaction_occupancy,
    backaction_spectrum,
    build_coupling_matrix,
    build_dynamical_matrix,
    cooling_system,
    dressed_params,
    injected_squeezing_params,
    is_min_squeezing,
    lab_from_dressed,
    min_injected_squeezing,
    optimal_pd_cooling,
    pd_cooling_detuning,
    quantum_backaction_limit,
    resonant_bath_occupation,
    susceptibility,
)
from pdoptomech.cooling import InjectedSqueezingParams


def test_optimal_drive_resolved_limit():
    assert optimal_pd_cooling(1.0, 1.0, 0.0) == 0


def test_optimal_drive_value():
    kappa = 5.0
    lam = optimal_pd_cooling(1 + kappa**2 / 8, 1.0, kappa)
    assert lam == pytest.approx(3.125 - 2.5j, abs=1e-15)


def test_optimal_drive_rejects_small_detuning():
    with pytest.raises(DiagonalizationError):
        optimal_pd_cooling(1.0, 1.0, 5.0)


@pytest.mark.parametrize("kappa", [0.1, 1.0, 5.0])
def test_pd_detuning_keeps_dressed_detuning(kappa):
    delta = pd_cooling_detuning(1.0, 1.0, kappa)
    assert delta == pytest.approx(1 + kappa**2 / 8, rel=1e-15)
    lam = optimal_pd_cooling(delta, 1.0, kappa)
    assert np.sqrt(delta**2 - abs(lam) ** 2) == pytest.approx(1.0, rel=1e-12)


def test_pd_detuning_general_target():
    delta = pd_cooling_detuning(0.7, 1.0, 2.0)
    lam = optimal_pd_cooling(delta, 1.0, 2.0)
    assert np.sqrt(delta**2 - abs(lam) ** 2) == pytest.approx(0.7, rel=1e-12)


def test_cooling_system_shares_dressed_frame():
    std, pd = cooling_system(3.0), cooling_system(3.0, pd=True)
    a, b = dressed_params(std), dressed_params(pd)
    assert b.delta_tilde1 == pytest.approx(a.delta_tilde1, rel=1e-13)
    assert b.g_tilde1 == pytest.approx(a.g_tilde1, rel=1e-13)
    assert a.g_tilde1**2 / (a.kappa1 * a.gamma) == pytest.approx(10.0)


def test_optimal_drive_nulls_resonant_susceptibility(rng):
    for _ in range(50):
        kappa = np.exp(rng.uniform(np.log(0.05), np.log(10)))
        delta = (1 + kappa**2 / 4) / 2 * rng.uniform(1.01, 3.0)
        g = rng.uniform(1e-3, 0.3)
        p = SystemParams(CavityParams(delta, optimal_pd_cooling(delta, 1.0, kappa), kappa, g), gamma=1e-4)
        x = susceptibility(build_dynamical_matrix(p), build_coupling_matrix(p), 1.0)
        assert abs(x[Mode.M, Mode.A1_DAG]) < 1e-12


def test_spectrum_matches_closed_form(rng):
    p = cooling_system(2.0, pd=True, gamma=1e-3)
    c = p.cavity1
    ws = np.linspace(-3, 5, 41)
    spec = backaction_spectrum(p, ws)
    ref = np.abs(chi_m1dag_closed_form(ws, c.delta, c.lam, c.kappa, c.g, 1.0, p.gamma)) ** 2
    np.testing.assert_allclose(spec.values, ref, rtol=1e-10, atol=1e-25)


def test_spectrum_zero_without_coupling():
    p = SystemParams(CavityParams(1.0, 0j, 1.0, 0.0), gamma=1e-3)
    assert np.all(backaction_spectrum(p, np.linspace(0, 2, 11)).values == 0)


def test_spectrum_exact_zero_at_resonance():
    spec = backaction_spectrum(cooling_system(5.0, pd=True), np.array([1.0]))
    assert spec.values[0] < 1e-20


def test_pd_suppresses_spectrum_near_resonance():
    ws = np.linspace(0.99, 1.01, 21)
    for kappa in (0.1, 5.0):
        std = backaction_spectrum(cooling_system(kappa), ws).values
        pd = backaction_spectrum(cooling_system(kappa, pd=True), ws).values
        assert np.all(pd < 0.1 * std)


def test_unstable_system_rejected():
    d = DressedParams(1.0, 1.5, 5.0, gamma=1e-5)
    with pytest.raises(UnstableSystemError):
        backaction_spectrum(d.as_system(), np.array([1.0]))
    with pytest.raises(UnstableSystemError):
        backaction_occupancy(d.as_system())


def test_occupancy_zero_without_coupling():
    p = SystemParams(CavityParams(1.0, 0j, 1.0, 0.0), gamma=1e-3)
    res = backaction_occupancy(p)
    assert res.n_ba == 0.0 and res.qba_limit == quantum_backaction_limit(1.0)


def test_standard_and_pd_against_limit():
    std = backaction_occupancy(cooling_system(5.0))
    pd = backaction_occupancy(cooling_system(5.0, pd=True))
    assert std.qba_limit / 2 < std.n_ba < 2 * std.qba_limit
    assert pd.n_ba < 0.1 * pd.qba_limit
    assert std.quad_error <= 1e-6 * max(std.n_ba, 1e-6)


@pytest.mark.parametrize("kappa", [0.5, 2.0])
def test_occupancy_against_brute_force(kappa):
    p = cooling_system(kappa, gamma=1e-3)
    c = p.cavity1
    ref = n_ba_trapezoid(c.delta, c.lam, c.kappa, c.g, 1.0, p.gamma, points=400_000)
    assert backaction_occupancy(p).n_ba == pytest.approx(ref, rel=5e-3)


def test_retuning_path_is_continuous():
    kappa = 3.0
    d = dressed_params(cooling_system(kappa, gamma=1e-4))
    lam_opt = optimal_pd_cooling(pd_cooling_detuning(1.0, 1.0, kappa), 1.0, kappa)
    ts = np.linspace(0, 1, 11)
    n = np.array([backaction_occupancy(lab_from_dressed(d, t * lam_opt)).n_ba for t in ts])
    assert n[0] == pytest.approx(backaction_occupancy(d.as_system()).n_ba, rel=1e-12)
    assert n[-1] == pytest.approx(backaction_occupancy(cooling_system(kappa, gamma=1e-4, pd=True)).n_ba,
                                  rel=1e-6)
    assert np.all(np.diff(n) < 0)
    assert np.max(np.abs(np.diff(n))) < 0.3 * n[0]


def test_qba_limit_values():
    assert quantum_backaction_limit(0.0) == 0.0
    assert quantum_backaction_limit(2.0) == pytest.approx((np.sqrt(2) - 1) / 2, rel=1e-15)
    assert quantum_backaction_limit(5.0) == pytest.approx((np.sqrt(7.25) - 1) / 2, rel=1e-15)
    assert quantum_backaction_limit(5.0) == pytest.approx(0.84629, abs=1e-5)


def test_injected_squeezing_resolved():
    assert injected_squeezing_params(1.0, 0.0).r_b == 0.0


@pytest.mark.parametrize("kappa", [0.5, 2.0, 5.0])
def test_injected_squeezing_minimum(kappa):
    delta = np.sqrt(1 + kappa**2 / 4)
    s = injected_squeezing_params(delta, kappa)
    assert np.sinh(2 * s.r_b) == pytest.approx(kappa / 2, rel=1e-12)
    assert s.r_b == pytest.approx(min_injected_squeezing(kappa), rel=1e-12)


@pytest.mark.parametrize("delta", [0.5, 1.0, 2.0, 4.0])
def test_injected_squeezing_phase(delta):
    kappa = 1.5
    s = injected_squeezing_params(delta, kappa)
    assert np.tan(s.theta_b) == pytest.approx(delta * kappa / (1 - delta**2 + kappa**2 / 4), rel=1e-12)
    assert np.cosh(2 * s.r_b) ** 2 == pytest.approx((delta + (1 + kappa**2 / 4) / delta) ** 2 / 4, rel=1e-12)


def test_injected_squeezing_needs_positive_detuning():
    with pytest.raises(NoPhysicalSqueezingError):
        injected_squeezing_params(-1.0, 1.0)


def test_injected_squeezing_params_validation():
    with pytest.raises(ValueError):
        InjectedSqueezingParams(-0.1, 0.0)


def test_min_squeezing():
    assert is_min_squeezing(0.0) == 0.0
    assert is_min_squeezing(2.0) == pytest.approx(np.arcsinh(1.0) / 2)
    ks = np.linspace(0.1, 10, 50)
    assert np.all(np.diff([is_min_squeezing(k) for k in ks]) > 0)


@pytest.mark.parametrize("kappa", [0.5, 2.0, 5.0])
def test_two_routes_to_zero_resonant_occupation(kappa):
    def chis(p):
        x = susceptibility(build_dynamical_matrix(p), build_coupling_matrix(p), 1.0)
        return x[Mode.M, Mode.A1], x[Mode.M, Mode.A1_DAG]

    # vacuum input, optimal drive
    assert resonant_bath_occupation(*chis(cooling_system(kappa, pd=True)), 0.0, 0.0) < 1e-24
    # undriven cavity with the squeezed input that nulls the resonant term
    delta = np.sqrt(1 + kappa**2 / 4)
    p = SystemParams(CavityParams(delta, 0j, kappa, 0.01), gamma=1e-5)
    s = injected_squeezing_params(delta, kappa)
    assert resonant_bath_occupation(*chis(p), s.r_b, s.theta_b) < 1e-20
    assert resonant_bath_occupation(*chis(p), 0.0, 0.0) > 1e-3
