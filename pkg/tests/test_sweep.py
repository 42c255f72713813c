import math

import pytest

from pinchsec import (
    ConfigError,
    FIGURE_CONFIG_NAMES,
    build_scenario,
    emit_csv,
    expand_curves,
    load_packaged_config,
    parse_config,
    run_sweep,
    validate,
)

BASE = """\
metric = spsc
axis = main_avg_snr_db
axis_values = 45, 50, 55
carrier_ghz = 28
height_m = 2
noise_dbm = -90
main_avg_snr_db = 50
eve_avg_snr_db = 50
main_rect_x_m = 10
main_rect_y_m = 30
eve_rect_x_m = 10
eve_rect_y_m = 30
methods = analytic-y, mc
mc_samples = 20000
seed = 4
"""


def test_parse_full_config():
    spec = parse_config(BASE)
    assert spec.metric == "spsc"
    assert spec.axis == "main_avg_snr_db"
    assert spec.axis_values == (45.0, 50.0, 55.0)
    assert spec.methods == ("analytic-y", "mc")
    assert spec.mc_samples == 20000
    assert spec.seed == 4
    assert spec.psi_base == "e"
    assert spec.fixed["eve_rect_y_m"] == 30.0


def test_parse_range_syntax_and_comments():
    text = BASE.replace("axis_values = 45, 50, 55",
                        "axis_values = 40:50:6  # inclusive grid")
    spec = parse_config(text)
    assert spec.axis_values == (40.0, 42.0, 44.0, 46.0, 48.0, 50.0)


def _expect_error(text, *needles):
    with pytest.raises(ConfigError) as err:
        parse_config(text)
    for needle in needles:
        assert needle in str(err.value)


def test_parse_errors_name_line_and_key():
    _expect_error(BASE.replace("metric = spsc", "metric = wat"),
                  "line 1", "metric")
    _expect_error(BASE.replace("axis_values = 45, 50, 55",
                               "axis_values ="), "line 3", "axis_values")
    _expect_error(BASE.replace("main_rect_y_m = 30", "main_rect_y_m = -5"),
                  "main_rect_y_m", "positive")
    _expect_error(BASE + "warp_factor = 9\n", "line 16", "warp_factor")
    _expect_error(BASE + "seed = 4\n", "line 16", "duplicate", "seed")
    _expect_error(BASE.replace("axis_values = 45, 50, 55",
                               "axis_values = 55, 50, 45"),
                  "line 3", "increasing")
    _expect_error(BASE.replace("height_m = 2\n", ""), "height_m")
    _expect_error(BASE.replace("metric = spsc", "metric = sop"),
                  "rate_bps_hz")
    _expect_error(BASE.replace("seed = 4", "seed = -1"), "seed")
    _expect_error(BASE + "curve_values = 1, 2\n", "curve")
    _expect_error(BASE + "curve = main_avg_snr_db\ncurve_values = 1, 2\n",
                  "differ from the axis")


def test_single_point_mode():
    text = "\n".join(line for line in BASE.splitlines()
                     if not line.startswith(("axis ", "axis_values")))
    spec = parse_config(text, single_point=True)
    assert spec.axis_values == (50.0,)
    with pytest.raises(ConfigError):
        parse_config(text)  # sweeps still require the axis grid


def test_build_scenario_binds_geometry():
    spec = parse_config(BASE)
    scenario, rate = build_scenario(spec.fixed, spec.psi_base)
    assert rate is None
    assert scenario.main.avg_snr_db == 50.0
    assert scenario.config.antenna_height_m == 2.0
    assert scenario.eve.rect_y_m == 30.0


def test_single_point_identical_nodes_half():
    spec = parse_config(BASE)
    result = run_sweep(spec)
    mid = [r for r in result.rows
           if r.axis_value == 50.0 and r.method == "analytic-y"]
    assert mid[0].value == pytest.approx(0.5, abs=1e-9)


def test_run_sweep_row_cardinality_and_determinism():
    spec = parse_config(BASE)
    result = run_sweep(spec)
    assert len(result.rows) == 6  # 3 axis points x 2 methods
    assert result.failures == 0
    again = run_sweep(parse_config(BASE))
    assert [(r.axis_value, r.method, r.value, r.error)
            for r in result.rows] == \
           [(r.axis_value, r.method, r.value, r.error)
            for r in again.rows]


def test_emit_csv_format(tmp_path):
    spec = parse_config(BASE)
    result = run_sweep(spec)
    out = tmp_path / "sweep.csv"
    emit_csv(result, out)
    raw = out.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "axis,method,value,error"
    assert len(lines) == 7  # header + 6 rows
    # sorted by (axis, method), round-trips exactly, >= 9 significant digits
    keys = [(float(l.split(",")[0]), l.split(",")[1]) for l in lines[1:]]
    assert keys == sorted(keys)
    by_key = {(r.axis_value, r.method): r for r in result.rows}
    for line in lines[1:]:
        axis_s, method, value_s, error_s = line.split(",")
        row = by_key[(float(axis_s), method)]
        assert float(value_s) == row.value or (
            math.isnan(float(value_s)) and math.isnan(row.value))
        assert float(error_s) == row.error
        mantissa = value_s.split("e")[0].replace("-", "").replace(".", "")
        assert len(mantissa) >= 9
    emit_csv(run_sweep(parse_config(BASE)), tmp_path / "again.csv")
    assert (tmp_path / "again.csv").read_bytes() == raw


def test_failed_points_recorded_not_fatal(tmp_path):
    # an unreachable tolerance exhausts the evaluation budget per point
    text = BASE.replace("metric = spsc", "metric = asc") + "tol = 1e-18\n"
    result = run_sweep(parse_config(text))
    analytic = [r for r in result.rows if r.method == "analytic-y"]
    assert result.failures == len(analytic) > 0
    assert all(math.isnan(r.value) for r in analytic)
    out = tmp_path / "failed.csv"
    emit_csv(result, out)
    assert "nan" in out.read_text()


def test_expand_curves():
    text = BASE + "curve = eve_avg_snr_db\ncurve_values = 40, 50, 60\n"
    spec = parse_config(text)
    expanded = expand_curves(spec)
    assert [label for label, _ in expanded] == [
        "eve_avg_snr_db=40", "eve_avg_snr_db=50", "eve_avg_snr_db=60"]
    values = [child.fixed["eve_avg_snr_db"] for _, child in expanded]
    assert values == [40.0, 50.0, 60.0]
    seeds = {child.seed for _, child in expanded}
    assert len(seeds) == 3  # independent Monte-Carlo streams per curve
    assert all(child.curve_param is None for _, child in expanded)
    plain = expand_curves(parse_config(BASE))
    assert plain[0][0] is None


def test_validate_passes_honest_config():
    report = validate(parse_config(BASE))
    assert report.passed
    assert len(report.rows) == 3
    assert report.case_form_gap is not None
    assert "PASS" in report.render()
    # the identical-node point is exact
    mid = [r for r in report.rows if r.axis_value == 50.0][0]
    assert mid.analytic == pytest.approx(0.5, abs=1e-9)
    assert abs(mid.analytic - mid.mc_mean) <= 3.0 * mid.mc_std_error + 1e-8


def test_validate_detects_corruption():
    report = validate(parse_config(BASE), corrupt={1: 0.77})
    assert not report.passed
    assert [r.passed for r in report.rows] == [True, False, True]
    assert "FAIL" in report.render()


def test_validate_requires_mc_and_analytic():
    with pytest.raises(ConfigError):
        validate(parse_config(BASE.replace("analytic-y, mc", "analytic-y")))
    with pytest.raises(ConfigError):
        validate(parse_config(BASE.replace("analytic-y, mc", "mc")))


def test_packaged_configs_parse():
    assert len(FIGURE_CONFIG_NAMES) == 4
    for name in FIGURE_CONFIG_NAMES:
        spec = parse_config(load_packaged_config(name))
        assert len(spec.axis_values) == 26
        assert spec.curve_param is not None
        assert "mc" in spec.methods


def test_curve_family_orderings():
    """Capacity curves stack by height; outage curves stack by budget."""
    text = load_packaged_config("asc_vs_main_snr_heights.cfg").replace(
        "axis_values = 40:90:26", "axis_values = 55:85:7").replace(
        "methods = analytic-y, mc", "methods = analytic-y")
    by_height = {}
    for label, child in expand_curves(parse_config(text)):
        rows = run_sweep(child).rows
        by_height[label] = [r.value for r in
                            sorted(rows, key=lambda r: r.axis_value)]
    for vals in by_height.values():
        assert all(b > a for a, b in zip(vals, vals[1:]))
    for low, high in (("height_m=2", "height_m=4"),
                      ("height_m=4", "height_m=6")):
        assert all(a > b for a, b in
                   zip(by_height[low], by_height[high]))
