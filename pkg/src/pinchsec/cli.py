"""Command-line interface.

Subcommands::

    pinchsec asc      --config cfg   single-point average secrecy capacity
    pinchsec spsc     --config cfg   single-point P(secrecy capacity > 0)
    pinchsec sop      --config cfg   single-point secrecy outage probability
    pinchsec sweep    --config cfg --out csv [--svg chart]
    pinchsec validate --config cfg   analytic-vs-MC cross-check
    pinchsec figures  [--out dir]    all packaged reference sweeps

Exit codes: 0 success, 1 config or I/O error, 2 numeric non-convergence,
3 validation failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .montecarlo import McEstimate
from .quadrature import QuadratureConvergenceError
from .sweep import (
    ConfigError,
    SweepSpec,
    _analytic_value,
    _mc_estimate,
    build_scenario,
    emit_csv,
    expand_curves,
    parse_config,
    run_figures,
    run_sweep,
    validate,
    write_figure_svg,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2
EXIT_VALIDATION = 3


class _Parser(argparse.ArgumentParser):
    """Argparse that reports usage problems through the exit-code scheme."""

    def error(self, message):
        raise ConfigError(message)


def _add_common(sub: argparse.ArgumentParser, config_required: bool = True):
    if config_required:
        sub.add_argument("--config", required=True, metavar="PATH",
                         help="sweep config file (key = value lines)")
    sub.add_argument("--seed", type=int, default=None, metavar="N",
                     help="override the config's Monte-Carlo seed")
    sub.add_argument("--mc-samples", type=int, default=None, metavar="N",
                     help="override the config's Monte-Carlo sample count")
    sub.add_argument("--tol", type=float, default=None, metavar="TOL",
                     help="override the config's quadrature tolerance")


def _build_parser() -> _Parser:
    parser = _Parser(prog="pinchsec", description=(
        "Secrecy metrics for a pinching-antenna wiretap link: analytic "
        "quadrature cross-validated by Monte-Carlo sampling."))
    subs = parser.add_subparsers(dest="command", required=True)

    for name, text in (("asc", "average secrecy capacity at one point"),
                       ("spsc", "P(secrecy capacity > 0) at one point"),
                       ("sop", "secrecy outage probability at one point")):
        sub = subs.add_parser(name, help=text)
        _add_common(sub)
        if name == "sop":
            sub.add_argument("--psi-base", choices=("e", "2"), default=None,
                             help="outage threshold exponent base")

    sub = subs.add_parser("sweep", help="run a sweep config to CSV")
    _add_common(sub)
    sub.add_argument("--out", required=True, metavar="PATH",
                     help="output CSV path (curve families add suffixes)")
    sub.add_argument("--svg", metavar="PATH", default=None,
                     help="also render the sweep as an SVG chart")
    sub.add_argument("--psi-base", choices=("e", "2"), default=None,
                     help="outage threshold exponent base")

    sub = subs.add_parser("validate", help="cross-check analytic against MC")
    _add_common(sub)
    sub.add_argument("--psi-base", choices=("e", "2"), default=None,
                     help="outage threshold exponent base")

    sub = subs.add_parser("figures", help="run all packaged reference sweeps")
    _add_common(sub, config_required=False)
    sub.add_argument("--out", default="figures_out", metavar="DIR",
                     help="output directory (default: figures_out)")
    return parser


def _load_spec(args, single_point: bool) -> SweepSpec:
    try:
        text = Path(args.config).read_text("utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    spec = parse_config(text, single_point=single_point)
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError("--seed must be >= 0")
        spec.seed = args.seed
    if args.mc_samples is not None:
        if args.mc_samples < 1000:
            raise ConfigError("--mc-samples must be >= 1000")
        spec.mc_samples = args.mc_samples
    if args.tol is not None:
        if args.tol <= 0.0:
            raise ConfigError("--tol must be positive")
        spec.tol = args.tol
    if getattr(args, "psi_base", None) is not None:
        spec.psi_base = args.psi_base
    return spec


def _run_point(args, metric: str) -> int:
    spec = _load_spec(args, single_point=True)
    if spec.metric != metric:
        raise ConfigError(
            f"config declares metric '{spec.metric}', not '{metric}'")
    if spec.curve_param is not None:
        raise ConfigError("single-point commands take configs without curves")
    fixed = dict(spec.fixed)
    fixed[spec.axis] = spec.axis_values[0]
    scenario, rate = build_scenario(fixed, spec.psi_base)
    status = EXIT_OK
    for method in spec.methods:
        if method == "mc":
            est: McEstimate = _mc_estimate(metric, scenario, rate,
                                           spec.mc_samples, spec.seed)
            print(f"{metric} {method} = {est.mean:.12g} "
                  f"+/- {est.std_error:.3g} "
                  f"(n={est.n_samples}, seed={est.seed})")
            continue
        route = "y" if method == "analytic-y" else "gamma"
        try:
            value = _analytic_value(metric, scenario, rate, route, spec.tol)
        except QuadratureConvergenceError as exc:
            print(f"{metric} {method}: quadrature did not converge: {exc}",
                  file=sys.stderr)
            status = EXIT_NUMERIC
            continue
        print(f"{metric} {method} = {value:.12g} (tol={spec.tol:g})")
    return status


def _run_sweep(args) -> int:
    spec = _load_spec(args, single_point=False)
    out = Path(args.out)
    if out.parent and not out.parent.exists():
        raise ConfigError(f"output directory does not exist: {out.parent}")
    failures = 0
    labeled = []
    for label, child in expand_curves(spec):
        result = run_sweep(child)
        failures += result.failures
        suffix = "" if label is None else "__" + label.replace("=", "_")
        csv_path = out.with_name(out.stem + suffix + out.suffix)
        emit_csv(result, csv_path)
        print(f"wrote {csv_path}")
        labeled.append((label, result))
    if args.svg is not None:
        write_figure_svg(labeled, args.svg, Path(args.svg).stem)
        print(f"wrote {args.svg}")
    if failures:
        print(f"warning: {failures} point(s) did not converge (NaN rows)",
              file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _run_validate(args) -> int:
    spec = _load_spec(args, single_point=False)
    all_passed = True
    for label, child in expand_curves(spec):
        report = validate(child)
        if label is not None:
            print(f"-- curve {label} --")
        print(report.render())
        all_passed = all_passed and report.passed
    return EXIT_OK if all_passed else EXIT_VALIDATION


def _run_figures(args) -> int:
    written, failures = run_figures(args.out, seed=args.seed,
                                    mc_samples=args.mc_samples)
    for path in written:
        print(f"wrote {path}")
    if failures:
        print(f"warning: {failures} point(s) did not converge (NaN rows)",
              file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command in ("asc", "spsc", "sop"):
            return _run_point(args, args.command)
        if args.command == "sweep":
            return _run_sweep(args)
        if args.command == "validate":
            return _run_validate(args)
        return _run_figures(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QuadratureConvergenceError as exc:
        print(f"error: quadrature did not converge: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    raise SystemExit(main())
