"""
Attenuation, received power, molecular noise and channel transfer functions.

All functions accept scalars or numpy arrays and broadcast elementwise.
Gains are returned as complex numbers (numpy complex128); randomness is
supplied by the caller through beta, the re-radiation phase in cycles.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import Boltzmann, speed_of_light

from .errors import DomainError

REFERENCE_TEMPERATURE_K = 296.0


@dataclass(frozen=True)
class PathConditions:
    frequency: float  # Hz
    distance: float  # m
    absorption: float = 0.0  # Np/m

    def __post_init__(self):
        if not np.all(np.asarray(self.frequency) > 0):
            raise DomainError(f"frequency must be > 0 Hz, got {self.frequency}")
        if not np.all(np.asarray(self.distance) > 0):
            raise DomainError(f"distance must be > 0 m, got {self.distance}")
        if not np.all(np.asarray(self.absorption) >= 0):
            raise DomainError(f"absorption must be >= 0 Np/m, got {self.absorption}")

    @property
    def wavelength(self):
        return speed_of_light / np.asarray(self.frequency, dtype=float)

    @property
    def optical_depth(self):
        """k * d, the exponent of the absorption attenuation."""
        return np.asarray(self.absorption, dtype=float) * np.asarray(self.distance, dtype=float)


@dataclass(frozen=True)
class NoisePsd:
    sky: float  # W/Hz
    self_induced: float  # W/Hz

    def __post_init__(self):
        if self.sky < 0 or self.self_induced < 0:
            raise DomainError("noise PSD components must be >= 0")

    @property
    def total(self) -> float:
        return self.sky + self.self_induced


def _scalar(value):
    """Unwrap 0-d arrays so scalar inputs give Python-style scalars back."""
    return value[()] if isinstance(value, np.ndarray) and value.ndim == 0 else value


def spread_gain(frequency, distance):
    """c / (4 pi f d), the amplitude of the spread-only path."""
    return speed_of_light / (4.0 * math.pi * np.asarray(frequency, dtype=float) * np.asarray(distance, dtype=float))


def spreading_attenuation(frequency, distance):
    """A_spread = (4 pi f d / c)^2."""
    if not (np.all(np.asarray(frequency) > 0) and np.all(np.asarray(distance) > 0)):
        raise DomainError("frequency and distance must be > 0")
    return _scalar((4.0 * math.pi * np.asarray(frequency, dtype=float) * np.asarray(distance, dtype=float) / speed_of_light) ** 2)


def absorption_attenuation(conditions: PathConditions):
    """A_abs = exp(k d) >= 1."""
    return _scalar(np.exp(conditions.optical_depth))


def total_attenuation(conditions: PathConditions):
    return _scalar(spreading_attenuation(conditions.frequency, conditions.distance) * absorption_attenuation(conditions))


def path_loss_db(conditions: PathConditions):
    return _scalar(10.0 * np.log10(total_attenuation(conditions)))


def los_received_power(tx_power, conditions: PathConditions):
    """P_t / (A_spread * A_abs)."""
    if np.any(np.asarray(tx_power) < 0):
        raise DomainError(f"transmit power must be >= 0 W, got {tx_power}")
    return _scalar(np.asarray(tx_power, dtype=float) / total_attenuation(conditions))


def _reradiated_fraction(conditions: PathConditions):
    # 1 - exp(-kd) without cancellation for small kd
    return -np.expm1(-conditions.optical_depth)


def reradiated_power(tx_power, conditions: PathConditions):
    """P_t (1 - exp(-k d)) (c / 4 pi f d)^2."""
    if np.any(np.asarray(tx_power) < 0):
        raise DomainError(f"transmit power must be >= 0 W, got {tx_power}")
    g = spread_gain(conditions.frequency, conditions.distance)
    return _scalar(np.asarray(tx_power, dtype=float) * _reradiated_fraction(conditions) * g**2)


def sky_noise_psd(frequency, absorption):
    """
    Distance-limit sky noise k_B T0 (c / (sqrt(4 pi) f))^2.

    The limit is independent of k for any k > 0 and identically 0 for k = 0;
    the discontinuity at k = 0 is deliberate.
    """
    f = np.asarray(frequency, dtype=float)
    k = np.asarray(absorption, dtype=float)
    if not (np.all(f > 0) and np.all(k >= 0)):
        raise DomainError("sky noise needs frequency > 0 and absorption >= 0")
    limit = Boltzmann * REFERENCE_TEMPERATURE_K * (speed_of_light / (math.sqrt(4.0 * math.pi) * f)) ** 2
    return _scalar(np.where(k > 0, limit, 0.0))


def molecular_noise_psd(tx_power: float, conditions: PathConditions) -> NoisePsd:
    """Sky noise plus self-induced noise (the re-radiated signal copy)."""
    return NoisePsd(
        sky=float(sky_noise_psd(conditions.frequency, conditions.absorption)),
        self_induced=float(reradiated_power(tx_power, conditions)),
    )


def los_gain(conditions: PathConditions):
    """(c / 4 pi f d) exp(-k d / 2) exp(j 2 pi d / lambda)."""
    g = spread_gain(conditions.frequency, conditions.distance)
    magnitude = g * np.exp(-0.5 * conditions.optical_depth)
    phase = 2.0 * math.pi * np.asarray(conditions.distance, dtype=float) / conditions.wavelength
    return _scalar(magnitude * np.exp(1j * phase))


def _check_beta(beta):
    b = np.asarray(beta, dtype=float)
    if np.any(b < 0) or np.any(b >= 1):
        raise DomainError("beta must lie in [0, 1)")
    return b


def reradiated_gain(conditions: PathConditions, beta):
    """(1 - exp(-k d))^(1/2) (c / 4 pi f d) exp(j 2 pi beta)."""
    b = _check_beta(beta)
    g = spread_gain(conditions.frequency, conditions.distance)
    magnitude = np.sqrt(_reradiated_fraction(conditions)) * g
    return _scalar(magnitude * np.exp(2j * math.pi * b))


def total_gain(conditions: PathConditions, beta):
    """H = H_LoS + H_a."""
    return _scalar(np.asarray(los_gain(conditions)) + np.asarray(reradiated_gain(conditions, beta)))
