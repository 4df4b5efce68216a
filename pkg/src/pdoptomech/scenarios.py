"""Scenario execution and the figure presets.

:func:`run_scenario` turns a :class:`~pdoptomech.config.ScenarioConfig` into
rows of numbers, and :func:`write_outputs` writes them as CSV together with
the resolved-config echo. Every system is checked for stability before any
spectrum is evaluated, and any failing sweep point aborts the whole run.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .config import ScenarioConfig, format_value
from .cooling import (
    backaction_occupancy,
    backaction_spectrum,
    optimal_pd_cooling,
    pd_cooling_detuning,
    quantum_backaction_limit,
    require_stable,
)
from .squeeze import bogoliubov_from_drive, lab_from_dressed
from .system import (
    CavityParams,
    DressedParams,
    SystemParams,
    build_coupling_matrix,
    build_dynamical_matrix,
    dressed_params,
    scattering,
)
from .transduction import (
    BathSpec,
    _refine_peak,
    added_noise,
    added_noise_lower_bound,
    conjugate_ratio,
    conversion_efficiency,
    db_to_squeeze,
    design_transducer,
    gamma_rate,
    optimal_output_squeeze_phase,
    optimal_teleport_phases,
    teleportation_noise,
)

__all__ = [
    "ScenarioResult",
    "run_scenario",
    "write_csv",
    "write_outputs",
    "sweep_grid",
    "cooling_system_from_config",
    "fig2_configs",
    "fig3_configs",
    "figS1_configs",
    "run_preset",
    "PRESETS",
    "TRANSDUCTION_COLUMNS",
    "FIG2_COLUMNS",
]

TRANSDUCTION_COLUMNS = ("omega_over_omega_m", "eta", "conj_ratio", "S", "S_lower_bound")
FIG2_COLUMNS = ("kappa_over_omega_m", "n_ba_standard", "n_ba_pd", "qba_limit")
SPECTRUM_COLUMNS = ("omega_over_omega_m", "chi_m1dag_sq")

#: Half-width of the automatic frequency window, in units of gamma1 + gamma2.
TRANSDUCER_WINDOW = 10.0


@dataclass
class ScenarioResult:
    """Rows produced by one scenario, plus the config with run-time values filled in."""

    config: ScenarioConfig
    columns: tuple
    rows: np.ndarray
    summary: dict = field(default_factory=dict)


def sweep_grid(start: float, stop: float, count: int, spacing: str) -> np.ndarray:
    if spacing == "log":
        return np.logspace(math.log10(start), math.log10(stop), count)
    return np.linspace(start, stop, count)


def _overridden(cfg: ScenarioConfig, value: float | None) -> ScenarioConfig:
    if value is None or cfg.sweep_variable == "omega":
        return cfg
    return replace(cfg, **{cfg.sweep_variable: float(value)})


def cooling_system_from_config(cfg: ScenarioConfig) -> SystemParams:
    """Lab-frame system for a cooling scenario.

    Without ``g1`` the dressed coupling is ``sqrt(cooperativity kappa1 gamma)``.
    In the dressed frame ``delta1`` and ``g1`` are dressed quantities and the
    optimal drive is accompanied by the detuning that keeps them fixed; in the
    lab frame they are taken literally.
    """
    g_dressed = math.sqrt(cfg.cooperativity * cfg.kappa1 * cfg.gamma)
    if cfg.frame == "dressed":
        d = DressedParams(cfg.delta1, g_dressed if cfg.g1 is None else cfg.g1, cfg.kappa1,
                          cfg.delta2, cfg.g2, cfg.kappa2, cfg.omega_m, cfg.gamma)
        if cfg.pd == "none":
            return d.as_system()
        delta1 = pd_cooling_detuning(cfg.delta1, cfg.omega_m, cfg.kappa1)
        return lab_from_dressed(d, optimal_pd_cooling(delta1, cfg.omega_m, cfg.kappa1))
    if cfg.pd == "optimal":
        lam1 = optimal_pd_cooling(cfg.delta1, cfg.omega_m, cfg.kappa1)
    else:
        lam1 = cfg.lambda1
    lam2 = cfg.lambda2 if cfg.pd == "explicit" else 0j
    g1 = cfg.g1
    if g1 is None:
        g1 = g_dressed / abs(bogoliubov_from_drive(cfg.delta1, lam1).mu)
    return SystemParams(
        CavityParams(cfg.delta1, lam1, cfg.kappa1, g1),
        CavityParams(cfg.delta2, lam2, cfg.kappa2, cfg.g2),
        omega_m=cfg.omega_m,
        gamma=cfg.gamma,
    )


def _cooling_point(cfg: ScenarioConfig, value: float, rtol: float):
    c = _overridden(cfg, value)
    res = backaction_occupancy(cooling_system_from_config(c), rtol=rtol)
    return res.n_ba, res.qba_limit


def _map(fn, args, jobs: int):
    if jobs <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=min(jobs, len(args))) as pool:
        # map preserves input order, so output does not depend on scheduling
        return list(pool.map(fn, *zip(*args)))


def _run_cooling(cfg: ScenarioConfig, rtol: float, jobs: int) -> ScenarioResult:
    if cfg.sweep_variable == "omega":
        p = cooling_system_from_config(cfg)
        require_stable(p)
        if cfg.sweep_start is None:
            half = 2.0 * max(cfg.kappa1, cfg.omega_m)
            cfg = replace(cfg, sweep_start=cfg.omega_m - half, sweep_stop=cfg.omega_m + half)
        omegas = sweep_grid(cfg.sweep_start, cfg.sweep_stop, cfg.sweep_count, cfg.sweep_spacing)
        spec = backaction_spectrum(p, omegas)
        occ = backaction_occupancy(p, rtol=rtol)
        rows = np.column_stack([omegas / cfg.omega_m, spec.values])
        summary = {"n_ba": occ.n_ba, "qba_limit": occ.qba_limit}
        return ScenarioResult(cfg, SPECTRUM_COLUMNS, rows, summary)
    values = sweep_grid(cfg.sweep_start, cfg.sweep_stop, cfg.sweep_count, cfg.sweep_spacing)
    # Check every point before spending time on quadrature.
    for v in values:
        require_stable(cooling_system_from_config(_overridden(cfg, v)))
    out = _map(_cooling_point, [(cfg, float(v), rtol) for v in values], jobs)
    rows = np.column_stack([values, np.array(out)])
    n_ba = rows[:, 1]
    summary = {"n_ba_min": float(n_ba.min()), "n_ba_max": float(n_ba.max()),
               "qba_limit_min": float(rows[:, 2].min()), "qba_limit_max": float(rows[:, 2].max())}
    return ScenarioResult(cfg, (cfg.sweep_variable, "n_ba", "qba_limit"), rows, summary)


def _transducer_point(cfg: ScenarioConfig):
    """Lab system, operating frequency and damping rates for a transducer scenario."""
    if cfg.frame == "dressed":
        design = design_transducer(
            cfg.kappa1, cfg.kappa2, cfg.g2, cfg.omega_m,
            pd=cfg.pd == "optimal", matching=cfg.matching, root=cfg.root,
            g_tilde1=cfg.g1 if cfg.matching == "explicit" else None,
        )
        info = {"g1": design.dressed.g_tilde1, "gamma1": design.gamma1, "gamma2": design.gamma2}
        return design.system, design.omega0, design.gamma1 + design.gamma2, info
    lam1 = cfg.lambda1 if cfg.pd == "explicit" else 0j
    lam2 = cfg.lambda2 if cfg.pd == "explicit" else 0j
    p = SystemParams(CavityParams(cfg.delta1, lam1, cfg.kappa1, cfg.g1),
                     CavityParams(cfg.delta2, lam2, cfg.kappa2, cfg.g2),
                     omega_m=cfg.omega_m, gamma=cfg.gamma)
    d = dressed_params(p)
    rate1 = gamma_rate(d.g_tilde1, d.kappa1, d.omega_m)
    rate2 = gamma_rate(d.g_tilde2, d.kappa2, d.omega_m)
    w0 = cfg.omega_m - (cfg.kappa1 * rate1 + cfg.kappa2 * rate2) / (8 * cfg.omega_m)
    h, k = build_dynamical_matrix(p), build_coupling_matrix(p)
    omega0 = _refine_peak(lambda w: conversion_efficiency(scattering(h, k, w)), w0,
                          max(rate1 + rate2, 1e-9))
    return p, omega0, rate1 + rate2, {"gamma1": rate1, "gamma2": rate2}


def _run_transducer(cfg: ScenarioConfig) -> ScenarioResult:
    p, omega0, width, info = _transducer_point(cfg)
    require_stable(p)
    h, k = build_dynamical_matrix(p), build_coupling_matrix(p)
    t0 = scattering(h, k, omega0)
    if cfg.sweep_start is None:
        half = TRANSDUCER_WINDOW * width
        cfg = replace(cfg, sweep_start=cfg.omega_m - half, sweep_stop=cfg.omega_m + half)
    omegas = sweep_grid(cfg.sweep_start, cfg.sweep_stop, cfg.sweep_count, cfg.sweep_spacing)
    t = scattering(h, k, omegas)
    eta, ratio = conversion_efficiency(t), conjugate_ratio(t)
    if cfg.mode == "teleportation":
        vartheta, phi_t = optimal_teleport_phases(t0)
        if cfg.bath2_vartheta is not None:
            vartheta = cfg.bath2_vartheta
        s_fn = lambda tt: teleportation_noise(tt, cfg.teleport_r, cfg.bath2_s, vartheta, phi_t)
        info["phi_t"] = phi_t
    else:
        vartheta = cfg.bath2_vartheta
        if vartheta is None:
            vartheta = optimal_output_squeeze_phase(t0) if cfg.bath2_s > 0 else 0.0
        bath = BathSpec(cfg.bath2_s, vartheta)
        s_fn = lambda tt: added_noise(tt, bath)
    info["vartheta"] = vartheta
    noise = s_fn(t)
    rows = np.column_stack([omegas / cfg.omega_m, eta, ratio, noise,
                            added_noise_lower_bound(eta, ratio)])
    summary = {"omega0": omega0, "eta(omega0)": float(conversion_efficiency(t0)),
               "S(omega0)": float(s_fn(t0)), **info}
    return ScenarioResult(cfg, TRANSDUCTION_COLUMNS, rows, summary)


def run_scenario(cfg: ScenarioConfig, rtol: float = 1e-6, jobs: int = 1) -> ScenarioResult:
    """Evaluate a scenario.

    Raises:
        UnstableSystemError: if any configured system is not strictly stable.
        QuadratureError: if a backaction integral misses ``rtol``.
        OptomechError: for other physically invalid parameter choices.
    """
    if cfg.mode == "cooling":
        return _run_cooling(cfg, rtol, jobs)
    return _run_transducer(cfg)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def write_csv(path, columns, rows):
    """CSV with a header row, 12 significant digits and ``\\n`` line endings."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def _echo(path, cfg: ScenarioConfig, notes=()):
    with open(str(path) + ".resolved.cfg", "w", encoding="utf-8", newline="\n") as fh:
        for note in notes:
            fh.write(f"# {note}\n")
        fh.write(cfg.to_text())


def write_outputs(result: ScenarioResult, out_dir=None) -> str:
    """Write the CSV and its ``.resolved.cfg`` echo; returns the CSV path."""
    path = result.config.output
    if out_dir is not None:
        path = os.path.join(out_dir, os.path.basename(path))
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    write_csv(path, result.columns, result.rows)
    notes = [f"{k} = {format_value(float(v))}" for k, v in result.summary.items()]
    _echo(path, result.config, notes)
    return path


# ---------------------------------------------------------------- presets

def fig2_configs(count: int = 25):
    """Standard and parametrically driven cooling sweeps over ``kappa1`` in [0.1, 10]."""
    base = ScenarioConfig(
        mode="cooling", frame="dressed", pd="none", gamma=1e-5, delta1=1.0,
        cooperativity=10.0, g2=0.0, sweep_variable="kappa1", sweep_start=0.1,
        sweep_stop=10.0, sweep_count=count, sweep_spacing="log", output="fig2.csv",
    )
    return base, replace(base, pd="optimal")


def fig3_configs(count: int = 2001):
    """The five transducer variants on a shared grid set by the red variant's linewidth."""
    red = ScenarioConfig(mode="transduction", pd="optimal", matching="modified",
                         kappa1=5.0, kappa2=5.0, g2=0.1, sweep_count=count)
    design = design_transducer(red.kappa1, red.kappa2, red.g2, red.omega_m)
    half = TRANSDUCER_WINDOW * (design.gamma1 + design.gamma2)
    red = replace(red, sweep_start=red.omega_m - half, sweep_stop=red.omega_m + half)
    s10 = db_to_squeeze(10.0)
    return {
        "grey": replace(red, pd="none", matching="standard", output="fig3_grey.csv"),
        "green": replace(red, matching="standard", output="fig3_green.csv"),
        "red": replace(red, output="fig3_red.csv"),
        "red_dashed": replace(red, bath2_s=s10, output="fig3_red_dashed.csv"),
        "red_dotted": replace(red, mode="teleportation", bath2_s=s10, teleport_r=s10,
                              output="fig3_red_dotted.csv"),
    }


def fig3_context_configs(count: int = 401):
    """Coarse wide-band companions of :func:`fig3_configs` over [0.5, 1.5] omega_m."""
    return {name: replace(c, sweep_start=0.5, sweep_stop=1.5, sweep_count=count,
                          output=c.output.replace("fig3_", "fig3_context_"))
            for name, c in fig3_configs().items()}


def figS1_configs(count: int = 4001):
    """Backaction spectra, standard and driven, at kappa1 = 0.1 and 5."""
    out = {}
    for kappa in (0.1, 5.0):
        base = ScenarioConfig(mode="cooling", pd="none", gamma=1e-5, kappa1=kappa,
                              cooperativity=10.0, g2=0.0, sweep_start=0.0, sweep_stop=2.0,
                              sweep_count=count, output=f"figS1_kappa{kappa:g}.csv")
        out[kappa] = (base, replace(base, pd="optimal"))
    return out


def _run_one(cfg, rtol):
    return run_scenario(cfg, rtol=rtol, jobs=1)


def _preset_fig2(out_dir, rtol, jobs):
    std, pd = fig2_configs()
    r_std = run_scenario(std, rtol, jobs)
    r_pd = run_scenario(pd, rtol, jobs)
    rows = np.column_stack([r_std.rows[:, 0], r_std.rows[:, 1], r_pd.rows[:, 1], r_std.rows[:, 2]])
    path = os.path.join(out_dir, "fig2.csv")
    write_csv(path, FIG2_COLUMNS, rows)
    _echo(path, pd, ["n_ba_pd column; n_ba_standard uses the same file with pd = none"])
    return [path], {"max n_ba_pd / qba_limit": float(np.max(rows[:, 2] / rows[:, 3])),
                    "max n_ba_standard / qba_limit": float(np.max(rows[:, 1] / rows[:, 3]))}


def _preset_fig3(out_dir, rtol, jobs):
    cfgs = list(fig3_configs().values()) + list(fig3_context_configs().values())
    results = _map(_run_one, [(c, rtol) for c in cfgs], jobs)
    paths = [write_outputs(r, out_dir) for r in results]
    summary = {}
    for name, r in zip(fig3_configs(), results):
        summary[f"{name}: eta(omega0)"] = r.summary["eta(omega0)"]
        summary[f"{name}: S(omega0)"] = r.summary["S(omega0)"]
    return paths, summary


def _preset_figS1(out_dir, rtol, jobs):
    paths, summary = [], {}
    for kappa, (std, pd) in figS1_configs().items():
        r_std, r_pd = run_scenario(std, rtol), run_scenario(pd, rtol)
        rows = np.column_stack([r_std.rows, r_pd.rows[:, 1]])
        path = os.path.join(out_dir, std.output)
        write_csv(path, ("omega_over_omega_m", "chi_m1dag_sq_standard", "chi_m1dag_sq_pd"), rows)
        _echo(path, pd, ["chi_m1dag_sq_pd column; the standard column uses pd = none"])
        paths.append(path)
        summary[f"kappa1={kappa:g}: n_ba standard"] = r_std.summary["n_ba"]
        summary[f"kappa1={kappa:g}: n_ba pd"] = r_pd.summary["n_ba"]
    return paths, summary


def _audit_row(seed: int, index: int):
    from .audit import audit_system
    return audit_system(np.random.default_rng([seed, index]))


def _preset_audit(out_dir, rtol, jobs, seed=0, count=200):
    rows = _map(_audit_row, [(seed, i) for i in range(count)], jobs)
    path = os.path.join(out_dir, "audit.csv")
    from .audit import AUDIT_COLUMNS
    write_csv(path, AUDIT_COLUMNS, [[i, *r] for i, r in enumerate(rows)])
    with open(path + ".resolved.cfg", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# randomized audit preset\nseed = {seed}\ncount = {count}\n")
    arr = np.array(rows, dtype=float)
    return [path], {"rh/eig disagreements": float(np.sum(arr[:, 0] != arr[:, 1])),
                    "max frame error": float(arr[:, 2].max()),
                    "max pseudo-unitarity error": float(arr[:, 3].max())}


PRESETS = {"fig2": _preset_fig2, "fig3": _preset_fig3, "figS1": _preset_figS1,
           "audit": _preset_audit}


def run_preset(name: str, out_dir=".", rtol: float = 1e-6, jobs: int = 1, seed: int = 0):
    """Run a named preset, writing its files to ``out_dir``; returns ``(paths, summary)``."""
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    os.makedirs(out_dir, exist_ok=True)
    if name == "audit":
        return _preset_audit(out_dir, rtol, jobs, seed=seed)
    return PRESETS[name](out_dir, rtol, jobs)
