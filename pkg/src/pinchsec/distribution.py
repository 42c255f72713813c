"""Closed-form law of the received SNR under a uniform lateral offset.

With the receiver's offset y uniform on [-rect_y/2, rect_y/2] and the link
distance sqrt(y^2 + h^2), the linear SNR

    s(y) = ref_pathloss * avg_snr_linear / (y^2 + h^2)

is a bounded random variable.  Its density has an integrable
inverse-square-root divergence at the upper support edge (the overhead
position), so expectations are best taken through :meth:`SnrDistribution.expect`,
which integrates in the offset variable where integrands stay smooth.  The
density, CDF, and quantile function are exact closed forms and serve as the
cross-check path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .geometry import NodeGeometry, SystemConfig, reference_pathloss
from .quadrature import QuadratureConvergenceError, integrate

__all__ = ["SnrDistribution"]


@dataclass(frozen=True)
class SnrDistribution:
    """SNR law of one node; immutable after construction.

    Parameters
    ----------
    ref_pathloss : float
        Free-space power loss at 1 m (wavelength^2 / (16 pi^2)).
    avg_snr_linear : float
        Mean SNR at the 1 m reference distance, linear scale.
    height_m : float
        Antenna height above the receiver plane.
    rect_y_m : float
        Lateral extent of the placement rectangle.

    ``support_lo``/``support_hi`` are derived: the SNR at the rectangle's far
    edge and directly under the antenna.
    """

    ref_pathloss: float
    avg_snr_linear: float
    height_m: float
    rect_y_m: float
    support_lo: float = field(init=False)
    support_hi: float = field(init=False)

    def __post_init__(self):
        for name in ("ref_pathloss", "avg_snr_linear", "height_m", "rect_y_m"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite")
        h2 = self.height_m * self.height_m
        scale = self.ref_pathloss * self.avg_snr_linear
        half = 0.5 * self.rect_y_m
        object.__setattr__(self, "support_lo", scale / (h2 + half * half))
        object.__setattr__(self, "support_hi", scale / h2)

    @classmethod
    def from_node(cls, node: NodeGeometry, config: SystemConfig) -> "SnrDistribution":
        return cls(reference_pathloss(config), node.avg_snr_linear,
                   config.antenna_height_m, node.rect_y_m)

    @property
    def snr_scale(self) -> float:
        """Numerator of the SNR map, ref_pathloss * avg_snr_linear."""
        return self.ref_pathloss * self.avg_snr_linear

    def snr_at_offset(self, y_offset):
        """SNR at lateral offset y; accepts floats or numpy arrays."""
        h = self.height_m
        return self.snr_scale / (y_offset * y_offset + h * h)

    def offset_of_snr(self, snr: float) -> float:
        """Inverse of :meth:`snr_at_offset` on [0, rect_y/2]."""
        if snr <= 0.0:
            raise ValueError("snr must be positive")
        arg = self.snr_scale / snr - self.height_m * self.height_m
        if arg < 0.0:
            raise ValueError("snr exceeds the support peak")
        return math.sqrt(arg)

    def _as_checked_array(self, snr) -> np.ndarray:
        arr = np.asarray(snr, dtype=float)
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
            raise ValueError("snr values must be positive and finite")
        return arr

    def pdf(self, snr):
        """Density of the SNR law.

        Zero outside the closed support.  At the upper support edge the
        density diverges; that point returns ``inf`` (never NaN) and must
        not be integrated through pointwise; use :meth:`expect` or the
        sqrt-endpoint quadrature instead.
        """
        arr = self._as_checked_array(snr)
        out = np.zeros_like(arr)
        inside = (arr >= self.support_lo) & (arr < self.support_hi)
        g = arr[inside]
        root = np.sqrt(np.maximum(self.snr_scale / g
                                  - self.height_m * self.height_m, 0.0))
        with np.errstate(divide="ignore"):
            out[inside] = self.snr_scale / (self.rect_y_m * g * g * root)
        out[arr == self.support_hi] = np.inf
        return float(out) if arr.ndim == 0 else out

    def cdf(self, snr):
        """Distribution function; 0 below the support and 1 above it."""
        arr = self._as_checked_array(snr)
        safe = np.clip(arr, self.support_lo, self.support_hi)
        root = np.sqrt(np.maximum(self.snr_scale / safe
                                  - self.height_m * self.height_m, 0.0))
        mid = np.clip(1.0 - (2.0 / self.rect_y_m) * root, 0.0, 1.0)
        out = np.where(arr >= self.support_hi, 1.0,
                       np.where(arr <= self.support_lo, 0.0, mid))
        return float(out) if arr.ndim == 0 else out

    def quantile(self, p):
        """Inverse CDF; maps 0 and 1 to the exact support endpoints."""
        arr = np.asarray(p, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 1.0) or not np.all(np.isfinite(arr)):
            raise ValueError("probabilities must lie in [0, 1]")
        h2 = self.height_m * self.height_m
        half_residual = 0.5 * self.rect_y_m * (1.0 - arr)
        out = self.snr_scale / (h2 + half_residual * half_residual)
        return float(out) if arr.ndim == 0 else out

    def sample(self, rng: np.random.Generator, size=None):
        """Draw SNR samples by sampling the offset uniformly.

        Deterministic for a given generator state; pass
        ``numpy.random.default_rng(seed)`` for reproducible streams.
        """
        half = 0.5 * self.rect_y_m
        y = rng.uniform(-half, half, size)
        return self.snr_at_offset(y)

    def expect(self, integrand: Callable[[float], float],
               tol: float = 1e-9) -> float:
        """E[integrand(SNR)] via quadrature in the offset variable.

        The integrand must be finite on the closed support.  Raises
        :class:`QuadratureConvergenceError` when the estimate cannot be
        brought under ``tol`` within the evaluation budget.
        """
        half = 0.5 * self.rect_y_m
        result = integrate(lambda y: integrand(self.snr_at_offset(y)),
                           0.0, half, tol=tol * half)
        if not result.converged:
            raise QuadratureConvergenceError(
                "expectation quadrature did not converge", result)
        return result.value / half
