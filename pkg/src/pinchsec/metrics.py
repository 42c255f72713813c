"""Secrecy metrics for a legitimate-receiver / eavesdropper pair.

Three metrics are exposed:

* ``average_sc``  - mean secrecy capacity E[max(0, log2((1+s_m)/(1+s_e)))]
* ``spsc``        - probability that the secrecy capacity is strictly positive
* ``sop``         - probability that the secrecy capacity falls below a target

Each is computed by two independent quadrature routes.  Route ``"y"``
(default) integrates in the offset variables, where every integrand is
piecewise smooth.  Route ``"gamma"`` integrates the closed-form density and
CDF directly in the SNR variable, taming the inverse-square-root upper
support edge with a substitution.  The routes share no integrand code, so
their agreement checks the algebra as well as the quadrature.

``spsc_case_form`` reproduces a published case-decomposition shortcut for
the strictly-positive probability verbatim.  That shortcut drops the
probability mass of the overlap window, so it disagrees with the general
route (for identical nodes it returns -0.5 where the truth is 0.5); it is
provided as a diagnostic only and the sweep validator reports the gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .distribution import SnrDistribution
from .geometry import NodeGeometry, SystemConfig
from .quadrature import (
    DEFAULT_MAX_EVALS,
    QuadratureConvergenceError,
    QuadratureResult,
    integrate,
    integrate_sqrt_endpoint,
)

__all__ = [
    "WiretapScenario",
    "SecrecyRate",
    "CaseLimits",
    "case_limits",
    "secrecy_capacity",
    "average_sc",
    "spsc",
    "spsc_case_form",
    "sop",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class WiretapScenario:
    """A legitimate node and an eavesdropper sharing one link config."""

    main: NodeGeometry
    eve: NodeGeometry
    config: SystemConfig

    @cached_property
    def main_dist(self) -> SnrDistribution:
        return SnrDistribution.from_node(self.main, self.config)

    @cached_property
    def eve_dist(self) -> SnrDistribution:
        return SnrDistribution.from_node(self.eve, self.config)

    def swapped(self) -> "WiretapScenario":
        """Scenario with the two receivers exchanged."""
        return WiretapScenario(self.eve, self.main, self.config)


@dataclass(frozen=True)
class SecrecyRate:
    """Target secrecy rate and the convention for its SNR threshold.

    ``threshold_base`` selects the outage threshold factor: "natural" uses
    exp(rate), "binary" uses 2**rate.  The factor is >= 1 for any
    non-negative rate.
    """

    rate_bps_hz: float
    threshold_base: str = "natural"

    def __post_init__(self):
        if not (math.isfinite(self.rate_bps_hz) and self.rate_bps_hz >= 0.0):
            raise ValueError("rate_bps_hz must be non-negative and finite")
        if self.threshold_base not in ("natural", "binary"):
            raise ValueError('threshold_base must be "natural" or "binary"')

    @property
    def psi(self) -> float:
        if self.threshold_base == "natural":
            return math.exp(self.rate_bps_hz)
        return 2.0 ** self.rate_bps_hz


@dataclass(frozen=True)
class CaseLimits:
    """Integration windows of the case decomposition of P(s_m > s_e).

    ``case1`` covers main-node SNRs above the eavesdropper's whole support;
    ``case2`` covers the overlap window.  Either window may be empty
    (lo > hi), which is legal and contributes zero.
    """

    case1_lo: float
    case1_hi: float
    case2_lo: float
    case2_hi: float


def case_limits(scenario: WiretapScenario) -> CaseLimits:
    dm = scenario.main_dist
    de = scenario.eve_dist
    return CaseLimits(
        case1_lo=max(dm.support_lo, de.support_hi),
        case1_hi=dm.support_hi,
        case2_lo=max(dm.support_lo, de.support_lo),
        case2_hi=min(dm.support_hi, de.support_hi),
    )


def secrecy_capacity(snr_main: float, snr_eve: float) -> float:
    """Instantaneous secrecy capacity in bits/s/Hz, clamped at zero."""
    if not (math.isfinite(snr_main) and math.isfinite(snr_eve)):
        raise ValueError("SNR values must be finite")
    if snr_main < 0.0 or snr_eve < 0.0:
        raise ValueError("SNR values must be non-negative")
    if snr_main <= snr_eve:
        return 0.0
    return (math.log1p(snr_main) - math.log1p(snr_eve)) / _LN2


def _pieces(lo: float, hi: float, candidates) -> list[tuple[float, float]]:
    """Split [lo, hi] at the candidate points that fall strictly inside."""
    points = sorted({c for c in candidates if lo < c < hi})
    edges = [lo, *points, hi]
    return [(edges[i], edges[i + 1]) for i in range(len(edges) - 1)
            if edges[i + 1] > edges[i]]


def _integrate_pieces(f, pieces, tol: float, sqrt_upper_at: float | None = None,
                      max_evals: int = DEFAULT_MAX_EVALS) -> float:
    """Sum integrals over the pieces; raise if any piece fails to converge.

    A piece whose upper edge equals ``sqrt_upper_at`` is integrated through
    the inverse-sqrt endpoint substitution.
    """
    if not pieces:
        return 0.0
    per_piece = tol / len(pieces)
    total = 0.0
    err = 0.0
    evals = 0
    for a, b in pieces:
        if sqrt_upper_at is not None and b == sqrt_upper_at:
            res = integrate_sqrt_endpoint(f, a, b, "upper", tol=per_piece,
                                          max_evals=max_evals)
        else:
            res = integrate(f, a, b, tol=per_piece, max_evals=max_evals)
        total += res.value
        err += res.abs_error_estimate
        evals += res.evaluations
        if not res.converged:
            raise QuadratureConvergenceError(
                "piecewise quadrature did not converge",
                QuadratureResult(total, err, evals, False))
    return total


def _check_route(route: str):
    if route not in ("y", "gamma"):
        raise ValueError('route must be "y" or "gamma"')


def average_sc(scenario: WiretapScenario, tol: float = 1e-8,
               route: str = "y") -> float:
    """Mean secrecy capacity in bits/s/Hz, to absolute tolerance ``tol``."""
    _check_route(route)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    dm = scenario.main_dist
    de = scenario.eve_dist
    if dm.support_hi <= de.support_lo:
        # The eavesdropper's worst SNR beats the main node's best one.
        return 0.0
    if route == "y":
        return _average_sc_offset(dm, de, tol)
    return _average_sc_snr(dm, de, tol)


def _average_sc_offset(dm: SnrDistribution, de: SnrDistribution,
                       tol: float) -> float:
    h2 = dm.height_m * dm.height_m
    half_m = 0.5 * dm.rect_y_m
    half_e = 0.5 * de.rect_y_m
    ratio = de.avg_snr_linear / dm.avg_snr_linear

    # Beyond y_stop even the farthest eavesdropper position wins.
    y_stop = math.sqrt((h2 + half_e * half_e) / ratio - h2)
    upper = min(y_stop, half_m)
    breaks = []
    if ratio < 1.0:
        # Below y_zero the positive-capacity region spans all of [0, half_e].
        y_zero = dm.height_m * math.sqrt(1.0 / ratio - 1.0)
        breaks.append(y_zero)

    inner_tol = tol * de.rect_y_m * _LN2 / 4.0
    outer_tol = tol * dm.rect_y_m * de.rect_y_m * _LN2 / 8.0

    def outer(y_m: float) -> float:
        s_m = dm.snr_at_offset(y_m)
        log_m = math.log1p(s_m)
        y_start = math.sqrt(max(ratio * (y_m * y_m + h2) - h2, 0.0))
        if y_start >= half_e:
            return 0.0

        def inner(y_e: float) -> float:
            return log_m - math.log1p(de.snr_at_offset(y_e))

        return _integrate_pieces(inner, [(y_start, half_e)], inner_tol)

    value = _integrate_pieces(outer, _pieces(0.0, upper, breaks), outer_tol)
    return 4.0 * value / (dm.rect_y_m * de.rect_y_m * _LN2)


def _average_sc_snr(dm: SnrDistribution, de: SnrDistribution,
                    tol: float) -> float:
    m_lo, m_hi = dm.support_lo, dm.support_hi
    e_lo, e_hi = de.support_lo, de.support_hi
    h2 = de.height_m * de.height_m
    scale_m = dm.snr_scale
    scale_e = de.snr_scale
    inner_tol = tol * _LN2 / 2.0
    outer_tol = tol * _LN2 / 2.0

    def pdf_e(g: float) -> float:
        root = math.sqrt(max(scale_e / g - h2, 0.0))
        if root == 0.0:
            return 0.0  # root underflow a rounding step inside the edge
        return scale_e / (de.rect_y_m * g * g * root)

    def pdf_m(g: float) -> float:
        root = math.sqrt(max(scale_m / g - dm.height_m * dm.height_m, 0.0))
        if root == 0.0:
            return 0.0
        return scale_m / (dm.rect_y_m * g * g * root)

    def inner(s_m: float) -> float:
        up = min(s_m, e_hi)
        if up <= e_lo:
            return 0.0
        log_m = math.log1p(s_m)

        def f(g: float) -> float:
            return (log_m - math.log1p(g)) * pdf_e(g)

        if up == e_hi:
            res = integrate_sqrt_endpoint(f, e_lo, e_hi, "upper", tol=inner_tol)
        else:
            res = integrate(f, e_lo, up, tol=inner_tol)
        if not res.converged:
            raise QuadratureConvergenceError(
                "inner quadrature did not converge", res)
        return res.value

    def outer(g: float) -> float:
        return pdf_m(g) * inner(g)

    value = _integrate_pieces(outer, _pieces(m_lo, m_hi, (e_lo, e_hi)),
                              outer_tol, sqrt_upper_at=m_hi)
    return value / _LN2


def spsc(scenario: WiretapScenario, tol: float = 1e-8,
         route: str = "y") -> float:
    """Probability that the secrecy capacity is strictly positive."""
    _check_route(route)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    dm = scenario.main_dist
    de = scenario.eve_dist
    if dm.support_lo >= de.support_hi:
        return 1.0
    if dm.support_hi <= de.support_lo:
        return 0.0
    if route == "y":
        half_m = 0.5 * dm.rect_y_m
        breaks = []
        for target in (de.support_lo, de.support_hi):
            if dm.support_lo < target < dm.support_hi:
                breaks.append(dm.offset_of_snr(target))
        value = _integrate_pieces(
            lambda y: de.cdf(dm.snr_at_offset(y)),
            _pieces(0.0, half_m, breaks), tol * half_m)
        return min(1.0, max(0.0, value / half_m))

    h2 = dm.height_m * dm.height_m
    scale_m = dm.snr_scale

    def f(g: float) -> float:
        root = math.sqrt(max(scale_m / g - h2, 0.0))
        if root == 0.0:
            return 0.0
        return de.cdf(g) * scale_m / (dm.rect_y_m * g * g * root)

    value = _integrate_pieces(
        f, _pieces(dm.support_lo, dm.support_hi,
                   (de.support_lo, de.support_hi)),
        tol, sqrt_upper_at=dm.support_hi)
    return min(1.0, max(0.0, value))


def spsc_case_form(scenario: WiretapScenario, tol: float = 1e-8) -> float:
    """Case-decomposition shortcut for P(s_m > s_e), reproduced verbatim.

    Diagnostic only: the shortcut omits the overlap window's probability
    mass, so the result can disagree with :func:`spsc` and may even be
    negative.  Compare the two to quantify the published formula's error.
    """
    dm = scenario.main_dist
    de = scenario.eve_dist
    limits = case_limits(scenario)
    value = dm.cdf(limits.case1_hi) - dm.cdf(limits.case1_lo)
    if limits.case2_lo < limits.case2_hi:
        h2 = dm.height_m * dm.height_m
        scale_m = dm.snr_scale
        scale_e = de.snr_scale

        def f(g: float) -> float:
            num = math.sqrt(max(scale_e / g - h2, 0.0))
            den = math.sqrt(max(scale_m / g - h2, 0.0))
            if den == 0.0:
                return 0.0
            return num / (g * g * den)

        if limits.case2_hi == dm.support_hi:
            res = integrate_sqrt_endpoint(f, limits.case2_lo, limits.case2_hi,
                                          "upper", tol=tol)
        else:
            res = integrate(f, limits.case2_lo, limits.case2_hi, tol=tol)
        if not res.converged:
            raise QuadratureConvergenceError(
                "case-form quadrature did not converge", res)
        value -= 2.0 * scale_m * res.value / (dm.rect_y_m * de.rect_y_m)
    return value


def sop(scenario: WiretapScenario, rate: SecrecyRate, tol: float = 1e-8,
        route: str = "y") -> float:
    """Probability that the secrecy capacity falls below the target rate.

    Evaluates E[F_m(psi * s_e + psi - 1)] with the main node's CDF in its
    full piecewise form, so threshold arguments outside the main support
    clamp to 0 or 1 instead of leaving the CDF's middle branch.
    """
    _check_route(route)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    dm = scenario.main_dist
    de = scenario.eve_dist
    psi = rate.psi
    shift = psi - 1.0
    if psi * de.support_lo + shift >= dm.support_hi:
        return 1.0
    if psi * de.support_hi + shift <= dm.support_lo:
        return 0.0

    # Eavesdropper SNRs at which the threshold crosses the main support edges.
    crossings = []
    for target in (dm.support_lo, dm.support_hi):
        s_e = (target - shift) / psi
        if de.support_lo < s_e < de.support_hi:
            crossings.append(s_e)

    if route == "y":
        half_e = 0.5 * de.rect_y_m
        breaks = [de.offset_of_snr(s_e) for s_e in crossings]
        value = _integrate_pieces(
            lambda y: dm.cdf(psi * de.snr_at_offset(y) + shift),
            _pieces(0.0, half_e, breaks), tol * half_e)
        return min(1.0, max(0.0, value / half_e))

    h2 = de.height_m * de.height_m
    scale_e = de.snr_scale

    def f(g: float) -> float:
        root = math.sqrt(max(scale_e / g - h2, 0.0))
        if root == 0.0:
            return 0.0
        pdf_e = scale_e / (de.rect_y_m * g * g * root)
        return dm.cdf(psi * g + shift) * pdf_e

    value = _integrate_pieces(
        f, _pieces(de.support_lo, de.support_hi, crossings),
        tol, sqrt_upper_at=de.support_hi)
    return min(1.0, max(0.0, value))
