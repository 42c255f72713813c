"""
Three secrecy metrics, two quadrature routes, one sampler
==========================================================

A legitimate node and an eavesdropper are each dropped uniformly in
their own rectangle beside the waveguide.  The induced SNR laws give
closed-form distributions, and every secrecy metric is an expectation
under them:

  * average secrecy capacity, E[log2((1 + snr_m) / (1 + snr_e))]+
  * probability of strictly positive secrecy capacity, P[snr_m > snr_e]
  * secrecy outage probability against a target rate

Each analytic value can be computed by integrating over the offset
coordinate or over the SNR coordinate; both must agree, and both must
sit inside the Monte-Carlo confidence band.
"""

from pinchsec import (
    NodeGeometry,
    SecrecyRate,
    SystemConfig,
    WiretapScenario,
    average_sc,
    estimate_asc,
    estimate_sop,
    estimate_spsc,
    sop,
    spsc,
)

config = SystemConfig()


def scenario(main_db, eve_db, main_depth=10.0, eve_depth=10.0):
    return WiretapScenario(
        main=NodeGeometry(10.0, main_depth, main_db),
        eve=NodeGeometry(10.0, eve_depth, eve_db),
        config=config,
    )


# A strong main link against a 30 dB weaker eavesdropper.
sc = scenario(80.0, 50.0)

asc_y = average_sc(sc, route="y")
asc_g = average_sc(sc, route="gamma")
mc = estimate_asc(sc, n=200_000, seed=7)
print("average secrecy capacity, 80 dB main vs 50 dB eve")
print(f"  offset-route quadrature : {asc_y:.9f}")
print(f"  snr-route quadrature    : {asc_g:.9f}")
print(f"  monte-carlo             : {mc.mean:.6f} +/- {mc.std_error:.6f}")
assert abs(asc_y - asc_g) <= 1e-8
assert abs(mc.mean - asc_y) <= 3.0 * mc.std_error

# Identical budgets and rectangles make the contest a fair coin: the
# eavesdropper outdraws the legitimate node exactly half the time.
fair = scenario(64.0, 64.0)
print(f"\nspsc with identical nodes : {spsc(fair):.12f}")

# Weakening the eavesdropper's budget pushes the probability up.  With
# 10 m rectangles at 2 m height the SNR supports separate once the
# budget gap passes ~8.6 dB, so the probability saturates at exactly 1.
print("\neve budget [dB]   spsc")
for eve_db in (72.0, 74.0, 76.0, 78.0, 80.0):
    p = spsc(scenario(80.0, eve_db))
    print(f"{eve_db:15.0f}   {p:.6f}")
assert spsc(scenario(80.0, 70.0)) == 1.0

# Spreading the eavesdropper's rectangle away from the waveguide also
# helps: a deeper strip means mostly weaker listening positions.
print("\neve strip depth [m]   spsc")
for depth in (10.0, 30.0, 60.0):
    p = spsc(scenario(50.0, 60.0, eve_depth=depth))
    print(f"{depth:19.0f}   {p:.6f}")

# Outage against a positive target rate, on a 5 dB budget gap.  The
# threshold base is selectable: nats ("natural") or bits ("binary").
tight = scenario(70.0, 65.0)
for base in ("natural", "binary"):
    rate = SecrecyRate(0.25, threshold_base=base)
    p_y = sop(tight, rate, route="y")
    p_g = sop(tight, rate, route="gamma")
    est = estimate_sop(tight, rate, n=200_000, seed=11)
    print(f"\nsop at rate 0.25 ({base} base)")
    print(f"  offset-route quadrature : {p_y:.9f}")
    print(f"  snr-route quadrature    : {p_g:.9f}")
    print(f"  monte-carlo             : {est.mean:.6f} +/- {est.std_error:.6f}")
    assert abs(p_y - p_g) <= 1e-8

# At rate zero an outage is exactly the failure to be strictly positive,
# so the two probability metrics are complements.
zero = SecrecyRate(0.0)
total = spsc(tight) + sop(tight, zero)
print(f"\nspsc + sop(rate 0)        : {total:.12f}")
assert abs(total - 1.0) <= 1e-9

est = estimate_spsc(tight, n=200_000, seed=13)
print(f"spsc monte-carlo          : {est.mean:.6f} +/- {est.std_error:.6f} "
      f"(analytic {spsc(tight):.6f})")
