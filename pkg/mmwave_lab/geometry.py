"""
Planar placement of two uniform linear arrays and their element distances.

The transmitter array is centered at the origin and the receiver array at
(D, 0). Orientation angles are measured from the link axis, so 90 degrees on
both sides is the parallel (broadside) layout. Element spacing is defined in
wavelengths and recomputed from the carrier at every call.
"""

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
from scipy.constants import speed_of_light

from .errors import DomainError


@dataclass(frozen=True)
class UlaConfig:
    element_count: int
    spacing_wavelengths: float = 0.5
    orientation: float = math.pi / 2  # radians

    def __post_init__(self):
        if isinstance(self.element_count, bool) or int(self.element_count) != self.element_count:
            raise DomainError(f"element_count must be an integer, got {self.element_count!r}")
        if self.element_count < 1:
            raise DomainError(f"element_count must be >= 1, got {self.element_count}")
        if not self.spacing_wavelengths > 0:
            raise DomainError(f"spacing_wavelengths must be > 0, got {self.spacing_wavelengths}")
        object.__setattr__(self, "element_count", int(self.element_count))

    def aperture(self, wavelength: float) -> float:
        return (self.element_count - 1) * self.spacing_wavelengths * wavelength


@dataclass(frozen=True)
class LinkGeometry:
    transmitter: UlaConfig
    receiver: UlaConfig
    separation: float  # meters

    def __post_init__(self):
        if not self.separation > 0:
            raise DomainError(f"separation must be > 0 m, got {self.separation}")

    @classmethod
    def symmetric(
        cls,
        n: int,
        separation: float = 50.0,
        spacing_wavelengths: float = 0.5,
        phi: float = math.pi / 2,
        theta: float = math.pi / 2,
    ) -> "LinkGeometry":
        """Equal n-element arrays on both sides (the n x n layout)."""
        return cls(
            UlaConfig(n, spacing_wavelengths, phi),
            UlaConfig(n, spacing_wavelengths, theta),
            separation,
        )

    @property
    def shape(self):
        return (self.receiver.element_count, self.transmitter.element_count)

    def with_element_count(self, n: int) -> "LinkGeometry":
        return replace(
            self,
            transmitter=replace(self.transmitter, element_count=n),
            receiver=replace(self.receiver, element_count=n),
        )

    def with_orientations(self, phi: float, theta: float) -> "LinkGeometry":
        return replace(
            self,
            transmitter=replace(self.transmitter, orientation=phi),
            receiver=replace(self.receiver, orientation=theta),
        )


@dataclass(frozen=True)
class DistanceMatrix:
    """n_r x n_t element distances in meters; row i receiver, column j transmitter."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2:
            raise DomainError("distance matrix must be 2-D")
        if np.any(entries <= 0):
            raise DomainError("element distances must be > 0")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def shape(self):
        return self.entries.shape


def wavelength(frequency: float) -> float:
    if not frequency > 0:
        raise DomainError(f"frequency must be > 0 Hz, got {frequency}")
    return speed_of_light / frequency


def element_offsets(element_count: int, spacing: float) -> np.ndarray:
    """Signed offsets (j - (n-1)/2) * spacing along the array axis."""
    return (np.arange(element_count) - (element_count - 1) / 2.0) * spacing


def element_positions(config: UlaConfig, center: Sequence[float], wavelength: float) -> np.ndarray:
    """Element coordinates (n x 2, meters) along (cos orientation, sin orientation)."""
    if not wavelength > 0:
        raise DomainError(f"wavelength must be > 0 m, got {wavelength}")
    offsets = element_offsets(config.element_count, config.spacing_wavelengths * wavelength)
    direction = np.array([math.cos(config.orientation), math.sin(config.orientation)])
    return np.asarray(center, dtype=float) + offsets[:, None] * direction


def _pairwise(tx_offsets, rx_offsets, separation, phi, theta):
    """
    Distances for broadcastable orientation arrays.

    Receiver elements run along (-cos theta, sin theta): theta is measured from
    the receiver-to-transmitter axis, so swapping phi and theta transposes the
    matrix.
    """
    phi = np.asarray(phi, dtype=float)[..., None, None]
    theta = np.asarray(theta, dtype=float)[..., None, None]
    rx = rx_offsets[:, None]
    tx = tx_offsets[None, :]
    dx = separation - rx * np.cos(theta) - tx * np.cos(phi)
    dy = rx * np.sin(theta) - tx * np.sin(phi)
    return np.hypot(dx, dy)


def distance_matrix(geometry: LinkGeometry, frequency: float) -> DistanceMatrix:
    """Euclidean distance between receiver element i and transmitter element j."""
    lam = wavelength(frequency)
    tx = geometry.transmitter
    rx = geometry.receiver
    entries = _pairwise(
        element_offsets(tx.element_count, tx.spacing_wavelengths * lam),
        element_offsets(rx.element_count, rx.spacing_wavelengths * lam),
        geometry.separation,
        tx.orientation,
        rx.orientation,
    )
    return DistanceMatrix(entries)


def distance_stack(geometry: LinkGeometry, frequency: float, phi: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Per-trial distance matrices (T x n_r x n_t) for per-trial orientations."""
    lam = wavelength(frequency)
    tx = geometry.transmitter
    rx = geometry.receiver
    return _pairwise(
        element_offsets(tx.element_count, tx.spacing_wavelengths * lam),
        element_offsets(rx.element_count, rx.spacing_wavelengths * lam),
        geometry.separation,
        phi,
        theta,
    )
