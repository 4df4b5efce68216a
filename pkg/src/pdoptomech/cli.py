"""Command-line entry point: ``run``, ``preset`` and ``check``."""

from __future__ import annotations

import argparse
import sys

from .config import load_config
from .errors import ConfigError, OptomechError, QuadratureError, UnstableSystemError
from .scenarios import (
    PRESETS,
    _transducer_point,
    cooling_system_from_config,
    run_preset,
    run_scenario,
    write_outputs,
)
from .stability import stability_report, transducer_instability_sufficient
from .system import dressed_params

EXIT_CONFIG, EXIT_UNSTABLE, EXIT_QUADRATURE, EXIT_OTHER = 2, 3, 4, 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdoptomech",
        description="Frequency-domain optomechanics with parametric drives.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    common.add_argument("--tolerance", type=float, default=1e-6,
                        help="relative tolerance of the backaction quadrature")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized presets")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", parents=[common], help="run a scenario file")
    p_run.add_argument("config")
    p_pre = sub.add_parser("preset", parents=[common], help="reproduce a figure data set")
    p_pre.add_argument("name", choices=sorted(PRESETS))
    p_chk = sub.add_parser("check", parents=[common], help="stability and design report only")
    p_chk.add_argument("config")
    return parser


def _print_summary(summary: dict):
    for key, value in summary.items():
        print(f"{key} = {value:.12g}")


def _check(cfg) -> int:
    if cfg.mode == "cooling":
        p = cooling_system_from_config(cfg)
        info = {}
    else:
        p, omega0, _, info = _transducer_point(cfg)
        info = {"omega0": omega0, **info}
    d = dressed_params(p)
    report = stability_report(d)
    print(f"stable = {report.stable}{' (marginal)' if report.marginal else ''}")
    print(f"max_eigen_real = {report.max_eigen_real:.12g}")
    print(f"routh_hurwitz = {report.rh_verdict if report.rh_verdict is not None else 'degenerate'}")
    if report.threshold_margin is not None:
        print(f"threshold_margin = {report.threshold_margin:.12g}")
    print(f"sufficient_instability = {transducer_instability_sufficient(d)}")
    print(f"lambda1 = {p.cavity1.lam:.12g}")
    print(f"delta1 = {p.cavity1.delta:.12g}")
    _print_summary(info)
    return 0 if report.stable else EXIT_UNSTABLE


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_CONFIG
    if not 0 < args.tolerance < 1:
        print("error: --tolerance must lie in (0, 1)", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "preset":
            paths, summary = run_preset(args.name, args.out or ".", rtol=args.tolerance,
                                        jobs=args.jobs, seed=args.seed)
            for path in paths:
                print(f"wrote {path}")
            _print_summary(summary)
            return 0
        cfg = load_config(args.config)
        if args.command == "check":
            return _check(cfg)
        result = run_scenario(cfg, rtol=args.tolerance, jobs=args.jobs)
        print(f"wrote {write_outputs(result, args.out)}")
        _print_summary(result.summary)
        return 0
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except UnstableSystemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except (OptomechError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OTHER


if __name__ == "__main__":
    sys.exit(main())
