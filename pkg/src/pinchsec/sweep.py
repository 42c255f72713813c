"""Config-driven parameter sweeps with CSV, SVG, and validation output.

A sweep config is UTF-8 ``key = value`` text, one binding per line, with
``#`` comments.  Unknown keys are rejected so typos fail loudly.  A config
describes one metric, one swept axis, the full scenario bindings, and the
evaluation methods; an optional ``curve`` / ``curve_values`` pair expands
into a family of single-curve sweeps (one CSV per curve, one chart per
family).

Numeric conventions are fixed: SNRs in dB, lengths in meters, the carrier
in GHz, powers in dBm, and the secrecy rate in bits/s/Hz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .geometry import NodeGeometry, SystemConfig
from .metrics import (
    SecrecyRate,
    WiretapScenario,
    average_sc,
    sop,
    spsc,
    spsc_case_form,
)
from .montecarlo import estimate_asc, estimate_sop, estimate_spsc
from .quadrature import QuadratureConvergenceError

__all__ = [
    "ConfigError",
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "ValidationReport",
    "parse_config",
    "build_scenario",
    "expand_curves",
    "run_sweep",
    "emit_csv",
    "validate",
    "write_figure_svg",
    "FIGURE_CONFIG_NAMES",
    "load_packaged_config",
    "run_figures",
]

METRICS = ("asc", "spsc", "sop")
METHODS = ("analytic-y", "analytic-gamma", "mc")
PSI_BASES = ("e", "2")

_SCENARIO_KEYS = (
    "carrier_ghz",
    "height_m",
    "noise_dbm",
    "main_avg_snr_db",
    "eve_avg_snr_db",
    "main_rect_x_m",
    "main_rect_y_m",
    "eve_rect_x_m",
    "eve_rect_y_m",
)
_OPTIONAL_SCENARIO_KEYS = ("refractive_index", "transmit_power_dbm", "rate_bps_hz")
_POSITIVE_KEYS = frozenset((
    "carrier_ghz", "height_m",
    "main_rect_x_m", "main_rect_y_m", "eve_rect_x_m", "eve_rect_y_m",
))
SWEEPABLE_KEYS = frozenset((*_SCENARIO_KEYS, "rate_bps_hz"))

_KNOWN_KEYS = frozenset((
    *_SCENARIO_KEYS, *_OPTIONAL_SCENARIO_KEYS,
    "metric", "axis", "axis_values", "curve", "curve_values",
    "methods", "mc_samples", "seed", "tol", "psi_base",
))

# Default mc draw count for sweeps; the acceptance-grade cross-checks use
# a larger n through the validate entry point.
DEFAULT_SWEEP_MC_SAMPLES = 100_000

FIGURE_CONFIG_NAMES = (
    "asc_vs_main_snr_heights.cfg",
    "spsc_vs_main_snr_eve_snr.cfg",
    "spsc_vs_main_snr_eve_width.cfg",
    "sop_vs_main_snr_eve_snr.cfg",
)

_CURVE_SEED_STRIDE = 9973


class ConfigError(ValueError):
    """Invalid sweep config; the message names the offending line and key."""


@dataclass
class SweepSpec:
    """Fully validated sweep description."""

    metric: str
    axis: str
    axis_values: tuple[float, ...]
    fixed: dict[str, float]
    methods: tuple[str, ...] = ("analytic-y", "mc")
    psi_base: str = "e"
    mc_samples: int = DEFAULT_SWEEP_MC_SAMPLES
    seed: int = 0
    tol: float = 1e-8
    curve_param: str | None = None
    curve_values: tuple[float, ...] = ()


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    method: str
    value: float
    error: float


@dataclass
class SweepResult:
    """Rows of (axis_value, method, value, error) for one sweep.

    ``error`` is the Monte-Carlo standard error for mc rows and the
    requested absolute quadrature tolerance for analytic rows.  Rows whose
    quadrature failed to converge carry NaN and are counted in
    ``failures``; the sweep itself never aborts on them.
    """

    spec: SweepSpec
    rows: list[SweepRow] = field(default_factory=list)
    failures: int = 0


class _RawConfig:
    """Key/value text with line numbers preserved for error reporting."""

    def __init__(self, text: str):
        self.entries: dict[str, tuple[str, int]] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if not key:
                raise ConfigError(f"line {lineno}: empty key")
            if key not in _KNOWN_KEYS:
                raise ConfigError(f"line {lineno}: unknown key '{key}'")
            if key in self.entries:
                raise ConfigError(f"line {lineno}: duplicate key '{key}'")
            if not value:
                raise ConfigError(f"line {lineno}: {key}: empty value")
            self.entries[key] = (value, lineno)

    def pop(self, key: str) -> tuple[str, int] | None:
        return self.entries.pop(key, None)


def _parse_float(key: str, value: str, lineno: int) -> float:
    try:
        out = float(value)
    except ValueError:
        raise ConfigError(f"line {lineno}: {key}: not a number: '{value}'") from None
    if not math.isfinite(out):
        raise ConfigError(f"line {lineno}: {key}: must be finite")
    return out


def _parse_float_list(key: str, value: str, lineno: int) -> tuple[float, ...]:
    """Comma list of reals, or 'start:stop:count' for an inclusive grid."""
    if ":" in value:
        parts = value.split(":")
        if len(parts) != 3:
            raise ConfigError(
                f"line {lineno}: {key}: range syntax is start:stop:count")
        start = _parse_float(key, parts[0], lineno)
        stop = _parse_float(key, parts[1], lineno)
        try:
            count = int(parts[2])
        except ValueError:
            raise ConfigError(
                f"line {lineno}: {key}: count must be an integer") from None
        if count < 2 or stop <= start:
            raise ConfigError(
                f"line {lineno}: {key}: need stop > start and count >= 2")
        return tuple(float(v) for v in np.linspace(start, stop, count))
    items = [item.strip() for item in value.split(",")]
    if any(not item for item in items):
        raise ConfigError(f"line {lineno}: {key}: empty list entry")
    return tuple(_parse_float(key, item, lineno) for item in items)


def parse_config(text: str, single_point: bool = False) -> SweepSpec:
    """Parse and validate config text into a :class:`SweepSpec`.

    With ``single_point`` the axis bindings may be omitted; the spec then
    evaluates the fixed scenario at its single axis value.
    """
    raw = _RawConfig(text)

    entry = raw.pop("metric")
    if entry is None:
        raise ConfigError("missing key: metric")
    metric, lineno = entry
    if metric not in METRICS:
        raise ConfigError(
            f"line {lineno}: metric: must be one of {', '.join(METRICS)}")

    fixed: dict[str, float] = {}
    for key in _SCENARIO_KEYS:
        entry = raw.pop(key)
        if entry is None:
            raise ConfigError(f"missing key: {key}")
        value = _parse_float(key, *entry)
        if key in _POSITIVE_KEYS and value <= 0.0:
            raise ConfigError(f"line {entry[1]}: {key}: must be positive")
        fixed[key] = value

    entry = raw.pop("refractive_index")
    if entry is not None:
        value = _parse_float("refractive_index", *entry)
        if value < 1.0:
            raise ConfigError(
                f"line {entry[1]}: refractive_index: must be >= 1")
        fixed["refractive_index"] = value
    entry = raw.pop("transmit_power_dbm")
    if entry is not None:
        fixed["transmit_power_dbm"] = _parse_float("transmit_power_dbm", *entry)
    entry = raw.pop("rate_bps_hz")
    if entry is not None:
        value = _parse_float("rate_bps_hz", *entry)
        if value < 0.0:
            raise ConfigError(f"line {entry[1]}: rate_bps_hz: must be >= 0")
        fixed["rate_bps_hz"] = value

    axis = "main_avg_snr_db"
    entry = raw.pop("axis")
    if entry is not None:
        axis, lineno = entry
        if axis not in SWEEPABLE_KEYS:
            raise ConfigError(f"line {lineno}: axis: cannot sweep '{axis}'")

    entry = raw.pop("axis_values")
    if entry is not None:
        values = _parse_float_list("axis_values", *entry)
        if not values:
            raise ConfigError(f"line {entry[1]}: axis_values: empty list")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ConfigError(
                f"line {entry[1]}: axis_values: must be strictly increasing")
        axis_values = values
    elif single_point:
        if axis not in fixed:
            raise ConfigError(f"missing key: {axis} (the axis binding)")
        axis_values = (fixed[axis],)
    else:
        raise ConfigError("missing key: axis_values")

    curve_param: str | None = None
    curve_values: tuple[float, ...] = ()
    entry = raw.pop("curve")
    if entry is not None:
        curve_param, lineno = entry
        if curve_param not in SWEEPABLE_KEYS:
            raise ConfigError(
                f"line {lineno}: curve: cannot sweep '{curve_param}'")
        if curve_param == axis:
            raise ConfigError(
                f"line {lineno}: curve: must differ from the axis")
        entry = raw.pop("curve_values")
        if entry is None:
            raise ConfigError("missing key: curve_values")
        curve_values = _parse_float_list("curve_values", *entry)
    elif raw.pop("curve_values") is not None:
        raise ConfigError("curve_values given without curve")

    methods: tuple[str, ...] = ("analytic-y", "mc")
    entry = raw.pop("methods")
    if entry is not None:
        value, lineno = entry
        items = tuple(dict.fromkeys(item.strip() for item in value.split(",")))
        for item in items:
            if item not in METHODS:
                raise ConfigError(
                    f"line {lineno}: methods: unknown method '{item}'")
        if not items:
            raise ConfigError(f"line {lineno}: methods: empty list")
        methods = items

    psi_base = "e"
    entry = raw.pop("psi_base")
    if entry is not None:
        psi_base, lineno = entry
        if psi_base not in PSI_BASES:
            raise ConfigError(f"line {lineno}: psi_base: must be 'e' or '2'")

    mc_samples = DEFAULT_SWEEP_MC_SAMPLES
    entry = raw.pop("mc_samples")
    if entry is not None:
        value, lineno = entry
        try:
            mc_samples = int(value)
        except ValueError:
            raise ConfigError(
                f"line {lineno}: mc_samples: not an integer") from None
        if mc_samples < 1000:
            raise ConfigError(f"line {lineno}: mc_samples: must be >= 1000")

    seed = 0
    entry = raw.pop("seed")
    if entry is not None:
        value, lineno = entry
        try:
            seed = int(value)
        except ValueError:
            raise ConfigError(f"line {lineno}: seed: not an integer") from None
        if seed < 0:
            raise ConfigError(f"line {lineno}: seed: must be >= 0")

    tol = 1e-8
    entry = raw.pop("tol")
    if entry is not None:
        tol = _parse_float("tol", *entry)
        if tol <= 0.0:
            raise ConfigError(f"line {entry[1]}: tol: must be positive")

    if metric == "sop":
        needs_rate = "rate_bps_hz" not in fixed
        if needs_rate and axis != "rate_bps_hz" and curve_param != "rate_bps_hz":
            raise ConfigError("missing key: rate_bps_hz (required for sop)")
        fixed.setdefault("rate_bps_hz", 0.0)

    assert not raw.entries, "unreachable: unknown keys rejected on read"
    return SweepSpec(metric=metric, axis=axis, axis_values=axis_values,
                     fixed=fixed, methods=methods, psi_base=psi_base,
                     mc_samples=mc_samples, seed=seed, tol=tol,
                     curve_param=curve_param, curve_values=curve_values)


def build_scenario(fixed: dict[str, float],
                   psi_base: str = "e") -> tuple[WiretapScenario, SecrecyRate | None]:
    """Construct the scenario (and rate, when bound) from config bindings."""
    config = SystemConfig(
        carrier_frequency_hz=fixed["carrier_ghz"] * 1e9,
        antenna_height_m=fixed["height_m"],
        effective_refractive_index=fixed.get("refractive_index", 1.4),
        noise_power_dbm=fixed["noise_dbm"],
        transmit_power_dbm=fixed.get("transmit_power_dbm",
                                     fixed["noise_dbm"]
                                     + fixed["main_avg_snr_db"]),
    )
    main = NodeGeometry(fixed["main_rect_x_m"], fixed["main_rect_y_m"],
                        fixed["main_avg_snr_db"])
    eve = NodeGeometry(fixed["eve_rect_x_m"], fixed["eve_rect_y_m"],
                       fixed["eve_avg_snr_db"])
    scenario = WiretapScenario(main, eve, config)
    rate = None
    if "rate_bps_hz" in fixed:
        base = "natural" if psi_base == "e" else "binary"
        rate = SecrecyRate(fixed["rate_bps_hz"], base)
    return scenario, rate


def expand_curves(spec: SweepSpec) -> list[tuple[str | None, SweepSpec]]:
    """One single-curve spec per curve value (or the spec itself, labeled None)."""
    if spec.curve_param is None:
        return [(None, spec)]
    out = []
    for index, value in enumerate(spec.curve_values):
        fixed = dict(spec.fixed)
        fixed[spec.curve_param] = value
        child = replace(spec, fixed=fixed, curve_param=None, curve_values=(),
                        seed=spec.seed + _CURVE_SEED_STRIDE * (index + 1))
        out.append((f"{spec.curve_param}={value:g}", child))
    return out


def _point_seeds(base_seed: int, count: int) -> list[int]:
    state = np.random.SeedSequence(base_seed).generate_state(count, np.uint64)
    return [int(s) for s in state]


def _analytic_value(metric: str, scenario: WiretapScenario,
                    rate: SecrecyRate | None, route: str, tol: float) -> float:
    if metric == "asc":
        return average_sc(scenario, tol=tol, route=route)
    if metric == "spsc":
        return spsc(scenario, tol=tol, route=route)
    if rate is None:
        raise ConfigError("missing key: rate_bps_hz (required for sop)")
    return sop(scenario, rate, tol=tol, route=route)


def _mc_estimate(metric: str, scenario: WiretapScenario,
                 rate: SecrecyRate | None, n: int, seed: int):
    if metric == "asc":
        return estimate_asc(scenario, n=n, seed=seed)
    if metric == "spsc":
        return estimate_spsc(scenario, n=n, seed=seed)
    if rate is None:
        raise ConfigError("missing key: rate_bps_hz (required for sop)")
    return estimate_sop(scenario, rate, n=n, seed=seed)


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate every (axis point, method) pair; never aborts on a point.

    Quadrature failures are recorded as NaN rows and counted.  A spec with
    curves must be expanded first (see :func:`expand_curves`).
    """
    if spec.curve_param is not None:
        raise ValueError("expand curves before running the sweep")
    result = SweepResult(spec)
    seeds = _point_seeds(spec.seed, len(spec.axis_values))
    for axis_value, point_seed in zip(spec.axis_values, seeds):
        fixed = dict(spec.fixed)
        fixed[spec.axis] = axis_value
        scenario, rate = build_scenario(fixed, spec.psi_base)
        for method in spec.methods:
            if method == "mc":
                est = _mc_estimate(spec.metric, scenario, rate,
                                   spec.mc_samples, point_seed)
                result.rows.append(SweepRow(axis_value, method,
                                            est.mean, est.std_error))
                continue
            route = "y" if method == "analytic-y" else "gamma"
            try:
                value = _analytic_value(spec.metric, scenario, rate,
                                        route, spec.tol)
            except QuadratureConvergenceError:
                result.rows.append(SweepRow(axis_value, method,
                                            math.nan, math.nan))
                result.failures += 1
                continue
            result.rows.append(SweepRow(axis_value, method, value, spec.tol))
    return result


def emit_csv(result: SweepResult, path) -> None:
    """Write rows as CSV, deterministically ordered by (axis, method).

    Values carry 17 significant digits, so parsing a column back with
    ``float`` reproduces the computed double exactly.
    """
    lines = ["axis,method,value,error"]
    for row in sorted(result.rows, key=lambda r: (r.axis_value, r.method)):
        lines.append(f"{row.axis_value:.12g},{row.method},"
                     f"{row.value:.16e},{row.error:.16e}")
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")


@dataclass
class ValidationRow:
    axis_value: float
    method: str
    analytic: float
    mc_mean: float
    mc_std_error: float
    passed: bool


@dataclass
class ValidationReport:
    """Per-point analytic-vs-MC verdicts for one sweep."""

    metric: str
    axis: str
    n_samples: int
    seed: int
    rows: list[ValidationRow]
    passed: bool
    case_form_gap: float | None = None

    def render(self) -> str:
        out = [f"validation: metric={self.metric} axis={self.axis} "
               f"mc_samples={self.n_samples} seed={self.seed}",
               f"{'axis':>12} {'method':>15} {'analytic':>14} "
               f"{'mc':>14} {'3*se':>10}  verdict"]
        for row in self.rows:
            verdict = "ok" if row.passed else "FAIL"
            out.append(f"{row.axis_value:>12.6g} {row.method:>15} "
                       f"{row.analytic:>14.8g} {row.mc_mean:>14.8g} "
                       f"{3 * row.mc_std_error:>10.3g}  {verdict}")
        if self.case_form_gap is not None:
            out.append("case-decomposition variant gap (reported, "
                       f"not asserted): {self.case_form_gap:.6g}")
        out.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(out)


def validate(spec: SweepSpec, n: int | None = None, seed: int | None = None,
             corrupt: dict[int, float] | None = None) -> ValidationReport:
    """Compare each analytic method against MC at every axis point.

    A point passes when |analytic - mc| <= 3 * std_error + tol; the tol
    term only matters at exactly saturated points where the standard error
    collapses to zero.  ``corrupt`` is a test hook mapping point index to a
    replacement analytic value, so the failure path stays testable.
    """
    if spec.curve_param is not None:
        raise ValueError("expand curves before validating")
    analytic_methods = [m for m in spec.methods if m != "mc"]
    if "mc" not in spec.methods or not analytic_methods:
        raise ConfigError(
            "validate needs 'mc' plus at least one analytic method")
    n_samples = spec.mc_samples if n is None else n
    base_seed = spec.seed if seed is None else seed
    rows: list[ValidationRow] = []
    case_gap: float | None = None
    seeds = _point_seeds(base_seed, len(spec.axis_values))
    for index, (axis_value, point_seed) in enumerate(
            zip(spec.axis_values, seeds)):
        fixed = dict(spec.fixed)
        fixed[spec.axis] = axis_value
        scenario, rate = build_scenario(fixed, spec.psi_base)
        est = _mc_estimate(spec.metric, scenario, rate, n_samples, point_seed)
        for method in analytic_methods:
            route = "y" if method == "analytic-y" else "gamma"
            value = _analytic_value(spec.metric, scenario, rate,
                                    route, spec.tol)
            if corrupt is not None and index in corrupt:
                value = corrupt[index]
            band = 3.0 * est.std_error + spec.tol
            rows.append(ValidationRow(axis_value, method, value, est.mean,
                                      est.std_error,
                                      abs(value - est.mean) <= band))
        if spec.metric == "spsc":
            gap = abs(spsc(scenario, tol=spec.tol)
                      - spsc_case_form(scenario, tol=spec.tol))
            case_gap = gap if case_gap is None else max(case_gap, gap)
    return ValidationReport(spec.metric, spec.axis, n_samples, base_seed,
                            rows, all(row.passed for row in rows), case_gap)


_AXIS_LABELS = {
    "main_avg_snr_db": "main node average SNR (dB)",
    "eve_avg_snr_db": "eavesdropper average SNR (dB)",
    "height_m": "antenna height (m)",
    "rate_bps_hz": "target secrecy rate (bits/s/Hz)",
}
_METRIC_LABELS = {
    "asc": "average secrecy capacity (bits/s/Hz)",
    "spsc": "P(secrecy capacity > 0)",
    "sop": "secrecy outage probability",
}


def write_figure_svg(labeled_results: list[tuple[str | None, SweepResult]],
                     path, title: str) -> None:
    """Render a sweep family as a static SVG line chart.

    The output is byte-stable for identical inputs: the SVG id salt is
    pinned and the creation date is stripped.
    """
    import matplotlib
    from matplotlib.figure import Figure

    matplotlib.rcParams["svg.hashsalt"] = "pinchsec"
    fig = Figure(figsize=(7.0, 4.5))
    ax = fig.subplots()
    spec = labeled_results[0][1].spec
    for label, result in labeled_results:
        for method in result.spec.methods:
            rows = sorted((r for r in result.rows if r.method == method),
                          key=lambda r: r.axis_value)
            xs = [r.axis_value for r in rows]
            ys = [r.value for r in rows]
            name = method if label is None else f"{label} ({method})"
            if method == "mc":
                ax.errorbar(xs, ys, yerr=[3 * r.error for r in rows],
                            fmt="o", markersize=3, capsize=2, label=name)
            else:
                ax.plot(xs, ys, label=name)
    ax.set_xlabel(_AXIS_LABELS.get(spec.axis, spec.axis))
    ax.set_ylabel(_METRIC_LABELS.get(spec.metric, spec.metric))
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.savefig(path, format="svg", metadata={"Date": None})


def load_packaged_config(name: str) -> str:
    """Text of one of the reference sweep configs shipped in the package."""
    return (resources.files("pinchsec") / "configs" / name).read_text("utf-8")


def run_figures(out_dir, seed: int | None = None,
                mc_samples: int | None = None,
                make_svg: bool = True) -> tuple[list[Path], int]:
    """Run every packaged reference sweep into ``out_dir``.

    Returns the written paths and the count of non-converged rows.  Output
    is deterministic for a fixed seed: re-running produces byte-identical
    CSV and SVG files.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    failures = 0
    for name in FIGURE_CONFIG_NAMES:
        spec = parse_config(load_packaged_config(name))
        if seed is not None:
            spec.seed = seed
        if mc_samples is not None:
            spec.mc_samples = mc_samples
        stem = Path(name).stem
        labeled: list[tuple[str | None, SweepResult]] = []
        for label, child in expand_curves(spec):
            result = run_sweep(child)
            failures += result.failures
            suffix = "" if label is None else "__" + label.replace("=", "_")
            csv_path = out / f"{stem}{suffix}.csv"
            emit_csv(result, csv_path)
            written.append(csv_path)
            labeled.append((label, result))
        if make_svg:
            svg_path = out / f"{stem}.svg"
            write_figure_svg(labeled, svg_path, stem.replace("_", " "))
            written.append(svg_path)
    return written, failures
