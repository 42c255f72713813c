"""
Config-driven sweeps: CSV tables, SVG charts, validation
=========================================================

The sweep engine reads a plain key = value config, runs one metric over
an axis (optionally as a family of curves), and writes one CSV per
curve plus one SVG per figure.  Runs are bit-reproducible for a fixed
seed.  The same machinery validates analytic values against their
Monte-Carlo confidence bands.

Outputs land in demos/output/ next to this script.
"""

from pathlib import Path

from pinchsec import (
    FIGURE_CONFIG_NAMES,
    emit_csv,
    expand_curves,
    load_packaged_config,
    parse_config,
    run_sweep,
    validate,
    write_figure_svg,
)

out_dir = Path(__file__).resolve().parent / "output"
out_dir.mkdir(exist_ok=True)

# Four sweep configs ship inside the package, one per reference figure.
print("packaged figure configs:")
for name in FIGURE_CONFIG_NAMES:
    print(f"  {name}")

# Load the capacity-vs-budget family and show the config grammar.
text = load_packaged_config("asc_vs_main_snr_heights.cfg")
head = [ln for ln in text.splitlines() if ln and not ln.startswith("#")][:6]
print("\nconfig head:")
for line in head:
    print(f"  {line}")

# A curve family expands into one single-curve sweep per curve value,
# each with its own derived seed.
spec = parse_config(text)
curves = expand_curves(spec)
print(f"\nmetric {spec.metric}, axis {spec.axis}, "
      f"{len(spec.axis_values)} points, {len(curves)} curves")

labeled = []
for label, child in curves:
    result = run_sweep(child)
    labeled.append((label, result))
    csv_path = out_dir / f"asc_demo__{label.replace('=', '_')}.csv"
    emit_csv(result, csv_path)
    analytic = [r.value for r in result.rows if r.method == "analytic-y"]
    print(f"  {label}: {len(result.rows)} rows, {result.failures} failures, "
          f"asc range {min(analytic):.3f} .. {max(analytic):.3f}")

svg_path = out_dir / "asc_demo.svg"
write_figure_svg(labeled, svg_path, title="asc_demo")
print(f"\nwrote {svg_path.name} and {len(labeled)} CSV files to {out_dir}")

# Determinism check: running a curve again reproduces the CSV exactly.
again = out_dir / "asc_demo_again.csv"
emit_csv(run_sweep(curves[0][1]), again)
first = out_dir / f"asc_demo__{curves[0][0].replace('=', '_')}.csv"
assert again.read_bytes() == first.read_bytes()
again.unlink()
print("re-run CSV is byte-identical")

# Validation: every analytic point must sit within 3 standard errors of
# its Monte-Carlo estimate (plus the quadrature tolerance).
check = parse_config("""\
metric = sop
axis = main_avg_snr_db
axis_values = 66, 70, 74
carrier_ghz = 28
height_m = 2
noise_dbm = -90
main_avg_snr_db = 70
eve_avg_snr_db = 65
main_rect_x_m = 10
main_rect_y_m = 10
eve_rect_x_m = 10
eve_rect_y_m = 10
rate_bps_hz = 0.25
methods = analytic-y, mc
mc_samples = 200000
seed = 21
""")
report = validate(check)
print("\n" + report.render())
