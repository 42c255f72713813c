"""Physical constants, waveguide geometry, and the position-to-SNR map.

A single radiating element sits on a lossless dielectric waveguide that runs
parallel to the x axis at height ``h`` above the receiver plane.  Because the
element can slide along the waveguide to align with a receiver's x
coordinate, only the lateral offset ``y`` and the height ``h`` control the
link distance, which makes the received SNR a deterministic map of the
offset.  Everything downstream (the SNR law, the secrecy metrics) builds on
the small set of functions defined here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "SPEED_OF_LIGHT_M_S",
    "SystemConfig",
    "Position3D",
    "NodeGeometry",
    "db_to_linear",
    "linear_to_db",
    "wavelength",
    "guided_wavelength",
    "reference_pathloss",
    "channel_coefficient",
    "waveguide_phase",
    "snr_from_offset",
]

SPEED_OF_LIGHT_M_S = 299_792_458.0


def db_to_linear(value_db: float) -> float:
    """Convert a dB quantity to linear scale, 10**(x/10)."""
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    """Convert a positive linear power ratio to dB."""
    if value <= 0.0:
        raise ValueError("dB conversion requires a positive value")
    return 10.0 * math.log10(value)


@dataclass(frozen=True)
class SystemConfig:
    """Link-level parameters shared by every receiver.

    ``transmit_power_dbm`` and ``noise_power_dbm`` matter only to the
    :meth:`NodeGeometry.from_link_budget` convenience constructor; the
    metrics treat each node's mean SNR as a free parameter.
    """

    carrier_frequency_hz: float = 28e9
    antenna_height_m: float = 2.0
    effective_refractive_index: float = 1.4
    noise_power_dbm: float = -90.0
    transmit_power_dbm: float = -10.0

    def __post_init__(self):
        if self.carrier_frequency_hz <= 0:
            raise ValueError("carrier_frequency_hz must be positive")
        if self.antenna_height_m <= 0:
            raise ValueError("antenna_height_m must be positive")
        if self.effective_refractive_index < 1.0:
            raise ValueError("effective_refractive_index must be >= 1")


@dataclass(frozen=True)
class Position3D:
    """A point in meters; the receiver plane is z = 0."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(map(math.isfinite, (self.x, self.y, self.z))):
            raise ValueError("position components must be finite")

    def distance_to(self, other: "Position3D") -> float:
        return math.dist((self.x, self.y, self.z), (other.x, other.y, other.z))


@dataclass(frozen=True)
class NodeGeometry:
    """Placement rectangle and mean SNR for one receiver.

    The node is uniform over ``[0, rect_x_m] x [-rect_y_m/2, rect_y_m/2]``
    in the z = 0 plane.  ``avg_snr_db`` is the mean received SNR at 1 m
    reference distance, in dB.
    """

    rect_x_m: float
    rect_y_m: float
    avg_snr_db: float

    def __post_init__(self):
        if self.rect_x_m <= 0 or self.rect_y_m <= 0:
            raise ValueError("rectangle sides must be positive")
        if not math.isfinite(self.avg_snr_db):
            raise ValueError("avg_snr_db must be finite")

    @property
    def avg_snr_linear(self) -> float:
        return db_to_linear(self.avg_snr_db)

    @classmethod
    def from_link_budget(cls, rect_x_m: float, rect_y_m: float,
                         config: SystemConfig) -> "NodeGeometry":
        """Node whose mean SNR is transmit power over noise power."""
        return cls(rect_x_m, rect_y_m,
                   config.transmit_power_dbm - config.noise_power_dbm)


def wavelength(config: SystemConfig) -> float:
    """Free-space wavelength in meters."""
    return SPEED_OF_LIGHT_M_S / config.carrier_frequency_hz


def guided_wavelength(config: SystemConfig) -> float:
    """Wavelength inside the dielectric waveguide."""
    return wavelength(config) / config.effective_refractive_index


def reference_pathloss(config: SystemConfig) -> float:
    """Free-space power loss at 1 m distance, wavelength^2 / (16 pi^2)."""
    lam = wavelength(config)
    return lam * lam / (16.0 * math.pi * math.pi)


def channel_coefficient(user: Position3D, antenna: Position3D,
                        config: SystemConfig) -> complex:
    """Complex line-of-sight channel between the element and a receiver.

    Magnitude sqrt(reference_pathloss)/distance, phase -2*pi*distance over
    the free-space wavelength.
    """
    dist = user.distance_to(antenna)
    if dist <= 0.0:
        raise ValueError("user and antenna positions must not coincide")
    amp = math.sqrt(reference_pathloss(config)) / dist
    phase = -2.0 * math.pi * dist / wavelength(config)
    return complex(amp * math.cos(phase), amp * math.sin(phase))


def waveguide_phase(antenna: Position3D, feed: Position3D,
                    config: SystemConfig) -> complex:
    """Unit-magnitude phase accumulated from the feed to the element.

    Both positions must lie on the waveguide line (y = 0, equal height);
    the phase constant uses the guided wavelength.
    """
    if antenna.y != 0.0 or feed.y != 0.0 or antenna.z != feed.z:
        raise ValueError("antenna and feed must lie on the waveguide line")
    dist = antenna.distance_to(feed)
    phase = -2.0 * math.pi * dist / guided_wavelength(config)
    return complex(math.cos(phase), math.sin(phase))


def snr_from_offset(y_offset: float, node: NodeGeometry,
                    config: SystemConfig) -> float:
    """Received linear SNR of a node at lateral offset ``y_offset``.

    Equals reference_pathloss * avg_snr_linear / (y^2 + h^2), the squared
    channel magnitude times the mean SNR when the element is x-aligned with
    the receiver.
    """
    if abs(y_offset) > node.rect_y_m / 2.0:
        raise ValueError("offset lies outside the placement rectangle")
    h = config.antenna_height_m
    return (reference_pathloss(config) * node.avg_snr_linear
            / (y_offset * y_offset + h * h))
