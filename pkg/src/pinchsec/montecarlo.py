"""Seeded Monte-Carlo estimators for the secrecy metrics.

Sampling happens in the offset variable only: the element aligns with each
receiver's x coordinate, so the x draw cancels from every SNR.  A diagnostic
(:func:`channel_snr_mismatch`) keeps that claim honest by sampling full 2-D
positions and comparing the complex-channel SNR against the offset map.

All estimators take an integer seed and are bit-reproducible for a fixed
(seed, n, scenario) triple; they draw through ``numpy.random.default_rng``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    NodeGeometry,
    Position3D,
    SystemConfig,
    channel_coefficient,
    snr_from_offset,
)
from .metrics import SecrecyRate, WiretapScenario

__all__ = [
    "McEstimate",
    "estimate_asc",
    "estimate_spsc",
    "estimate_sop",
    "channel_snr_mismatch",
]

_MIN_SAMPLES = 1000


@dataclass(frozen=True)
class McEstimate:
    """Sample mean, its standard error, and the draw that produced them."""

    mean: float
    std_error: float
    n_samples: int
    seed: int


def _check_n(n: int):
    if n < _MIN_SAMPLES:
        raise ValueError(f"need at least {_MIN_SAMPLES} samples")


def _draw_snr_pair(scenario: WiretapScenario, n: int, seed: int,
                   paired: bool) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    dm = scenario.main_dist
    de = scenario.eve_dist
    if paired:
        # Diagnostic mode: both nodes reuse one relative offset stream, so
        # identical geometries receive identical SNR draws.
        u = rng.uniform(-0.5, 0.5, n)
        y_m = u * dm.rect_y_m
        y_e = u * de.rect_y_m
    else:
        y_m = rng.uniform(-0.5 * dm.rect_y_m, 0.5 * dm.rect_y_m, n)
        y_e = rng.uniform(-0.5 * de.rect_y_m, 0.5 * de.rect_y_m, n)
    return dm.snr_at_offset(y_m), de.snr_at_offset(y_e)


def estimate_asc(scenario: WiretapScenario, n: int = 1_000_000,
                 seed: int = 0, paired: bool = False) -> McEstimate:
    """Sample-mean secrecy capacity with std_error = sample_std / sqrt(n)."""
    _check_n(n)
    s_m, s_e = _draw_snr_pair(scenario, n, seed, paired)
    cs = np.maximum(np.log2((1.0 + s_m) / (1.0 + s_e)), 0.0)
    return McEstimate(float(cs.mean()),
                      float(cs.std(ddof=1) / math.sqrt(n)), n, seed)


def _proportion(hits: np.ndarray, n: int, seed: int) -> McEstimate:
    p = float(hits.mean())
    return McEstimate(p, math.sqrt(p * (1.0 - p) / n), n, seed)


def estimate_spsc(scenario: WiretapScenario, n: int = 1_000_000,
                  seed: int = 0) -> McEstimate:
    """Fraction of draws with the main SNR strictly above the eavesdropper's."""
    _check_n(n)
    s_m, s_e = _draw_snr_pair(scenario, n, seed, paired=False)
    return _proportion(s_m > s_e, n, seed)


def estimate_sop(scenario: WiretapScenario, rate: SecrecyRate,
                 n: int = 1_000_000, seed: int = 0) -> McEstimate:
    """Fraction of draws whose secrecy capacity misses the target rate.

    Uses the threshold form of the outage event under the rate's base
    convention: s_m < psi * s_e + psi - 1.
    """
    _check_n(n)
    s_m, s_e = _draw_snr_pair(scenario, n, seed, paired=False)
    psi = rate.psi
    return _proportion(s_m < psi * s_e + (psi - 1.0), n, seed)


def channel_snr_mismatch(node: NodeGeometry, config: SystemConfig,
                         n: int = 1000, seed: int = 0) -> float:
    """Max relative gap between the complex-channel SNR and the offset map.

    Draws full (x, y) positions, aligns the element with each x, and compares
    |channel|^2 * avg_snr_linear against :func:`snr_from_offset`.  Should sit
    at floating-point noise; anything larger flags an inconsistency between
    the geometry primitives and the SNR law.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    xs = rng.uniform(0.0, node.rect_x_m, n)
    ys = rng.uniform(-0.5 * node.rect_y_m, 0.5 * node.rect_y_m, n)
    h = config.antenna_height_m
    worst = 0.0
    for x, y in zip(xs, ys):
        coeff = channel_coefficient(Position3D(x, y, 0.0),
                                    Position3D(x, 0.0, h), config)
        via_channel = (coeff.real * coeff.real
                       + coeff.imag * coeff.imag) * node.avg_snr_linear
        via_map = snr_from_offset(y, node, config)
        worst = max(worst, abs(via_channel - via_map) / via_map)
    return worst
