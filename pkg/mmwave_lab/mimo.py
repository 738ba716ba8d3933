"""
MIMO channel matrix assembly and capacity.

Under constant-SNR normalization every entry is divided by the spread-only
gain at the center distance, c / (4 pi f D), so the total received power and
hence the reception SNR do not depend on the absorption coefficient.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np

from .errors import BudgetModeError, DomainError, NumericalError, ShapeError
from .geometry import LinkGeometry, distance_matrix, wavelength
from .propagation import spread_gain

RANK_TOLERANCE = 1e-9
DEFAULT_SNR_DB = 20.0
DEFAULT_TX_POWER_W = 1.0
DEFAULT_NOISE_DBM = -100.0


class Normalization(Enum):
    CONSTANT_SNR = "constant_snr"
    RAW_GAIN = "raw_gain"


class BudgetMode(Enum):
    CONSTANT_SNR = "constant_snr"
    CONSTANT_POWER = "constant_power"


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0) * 1e-3


@dataclass(frozen=True)
class PowerBudget:
    mode: BudgetMode
    snr: Optional[float] = None
    total_power: Optional[float] = None
    noise_power: Optional[float] = None

    def __post_init__(self):
        if self.mode is BudgetMode.CONSTANT_SNR:
            if self.snr is None or not self.snr > 0:
                raise DomainError(f"constant-SNR budget needs snr > 0, got {self.snr}")
        else:
            if self.total_power is None or not self.total_power > 0:
                raise DomainError(f"constant-power budget needs total_power > 0 W, got {self.total_power}")
            if self.noise_power is None or not self.noise_power > 0:
                raise DomainError(f"constant-power budget needs noise_power > 0 W, got {self.noise_power}")

    @classmethod
    def constant_snr(cls, snr_db: float = DEFAULT_SNR_DB) -> "PowerBudget":
        return cls(BudgetMode.CONSTANT_SNR, snr=db_to_linear(snr_db))

    @classmethod
    def constant_power(
        cls, total_power: float = DEFAULT_TX_POWER_W, noise_dbm: float = DEFAULT_NOISE_DBM
    ) -> "PowerBudget":
        return cls(BudgetMode.CONSTANT_POWER, total_power=total_power, noise_power=dbm_to_watts(noise_dbm))

    @property
    def normalization(self) -> Normalization:
        if self.mode is BudgetMode.CONSTANT_SNR:
            return Normalization.CONSTANT_SNR
        return Normalization.RAW_GAIN

    @property
    def power_to_noise(self) -> float:
        """P / sigma^2 as it enters the capacity formula."""
        if self.mode is BudgetMode.CONSTANT_SNR:
            return self.snr
        return self.total_power / self.noise_power

    def describe(self) -> str:
        if self.mode is BudgetMode.CONSTANT_SNR:
            return f"snr_db={10.0 * math.log10(self.snr)!r}"
        return f"power_w={self.total_power!r};noise_w={self.noise_power!r}"


@dataclass(frozen=True)
class ChannelMatrix:
    entries: np.ndarray
    frequency: float
    absorption: float
    normalization: Normalization

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2:
            raise ShapeError(f"channel matrix must be 2-D, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise NumericalError("channel matrix has non-finite entries")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def shape(self):
        return self.entries.shape


@dataclass(frozen=True)
class CapacityResult:
    capacity: float
    singular_values: List[float] = field(default_factory=list)
    rank: int = 0
    inverse_condition: float = 0.0


def channel_entries(distances, frequency, absorption, betas, normalization: Normalization, separation: float):
    """
    Vectorised h_ij over any leading stack dimensions.

    distances and betas broadcast against each other; the LoS term uses the
    deterministic phase 2 pi d / lambda and the re-radiated term 2 pi beta.
    """
    d = np.asarray(distances, dtype=float)
    lam = wavelength(frequency)
    kd = absorption * d
    g = spread_gain(frequency, d)
    los = g * np.exp(-0.5 * kd) * np.exp(2j * math.pi * (d / lam))
    rerad = g * np.sqrt(-np.expm1(-kd)) * np.exp(2j * math.pi * np.asarray(betas, dtype=float))
    h = los + rerad
    if normalization is Normalization.CONSTANT_SNR:
        h = h / spread_gain(frequency, separation)
    return h


def build_channel(
    geometry: LinkGeometry,
    frequency: float,
    absorption: float,
    betas,
    normalization: Normalization = Normalization.CONSTANT_SNR,
) -> ChannelMatrix:
    """h_ij = total_gain(f, d_ij, k, beta_ij), optionally normalized by c / (4 pi f D)."""
    if not absorption >= 0:
        raise DomainError(f"absorption must be >= 0 Np/m, got {absorption}")
    betas = np.asarray(betas, dtype=float)
    if betas.shape != geometry.shape:
        raise ShapeError(f"betas shape {betas.shape} does not match channel shape {geometry.shape}")
    if np.any(betas < 0) or np.any(betas >= 1):
        raise DomainError("betas must lie in [0, 1)")

    distances = distance_matrix(geometry, frequency).entries
    entries = channel_entries(distances, frequency, absorption, betas, normalization, geometry.separation)
    return ChannelMatrix(entries, frequency, absorption, normalization)


def _check_mode(channel: ChannelMatrix, budget: PowerBudget) -> None:
    if channel.normalization is not budget.normalization:
        raise BudgetModeError(
            f"{channel.normalization.value} channel cannot be evaluated with a {budget.mode.value} budget"
        )


def capacity_det(channel: ChannelMatrix, budget: PowerBudget) -> float:
    """log2 det(I + P / (n_t sigma^2) H H^dagger)."""
    _check_mode(channel, budget)
    h = channel.entries
    n_r, n_t = h.shape
    m = np.eye(n_r) + (budget.power_to_noise / n_t) * (h @ h.conj().T)
    sign, logdet = np.linalg.slogdet(m)
    if sign.real <= 0:
        raise NumericalError("determinant of I + rho H H^dagger is not positive")
    return float(logdet / math.log(2.0))


def summarize_singular_values(singular_values: np.ndarray, rho_per_antenna: float):
    """
    Capacity, rank and inverse condition from descending singular values.

    Works on stacks: the last axis holds the min(n_r, n_t) values.
    """
    s = np.asarray(singular_values, dtype=float)
    s_max = s[..., :1]
    significant = s > s_max * RANK_TOLERANCE
    capacity = np.sum(np.where(significant, np.log2(1.0 + rho_per_antenna * s**2), 0.0), axis=-1)
    rank = np.sum(significant, axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        inverse = np.where(significant[..., -1], s[..., -1] / s[..., 0], 0.0)
    return capacity, rank, inverse


def singular_values(entries: np.ndarray, trial_offset: Optional[int] = None) -> np.ndarray:
    try:
        return np.linalg.svd(entries, compute_uv=False)
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"SVD did not converge ({e})", trial_index=trial_offset)


def capacity_eig(channel: ChannelMatrix, budget: PowerBudget) -> CapacityResult:
    """Sum over nonzero singular values of log2(1 + P lambda_i^2 / (n_t sigma^2))."""
    _check_mode(channel, budget)
    n_t = channel.shape[1]
    s = singular_values(channel.entries)
    capacity, rank, inverse = summarize_singular_values(s, budget.power_to_noise / n_t)
    return CapacityResult(float(capacity), s.tolist(), int(rank), float(inverse))


def capacity_from_gram(gram: np.ndarray, budget: PowerBudget, n_t: int) -> CapacityResult:
    """
    Capacity of a (possibly trial-averaged) Gram matrix H H^dagger.

    Singular values are the square roots of its eigenvalues, descending.
    """
    gram = np.asarray(gram, dtype=complex)
    hermitian = 0.5 * (gram + gram.conj().T)
    try:
        eigenvalues = np.linalg.eigvalsh(hermitian)
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"eigendecomposition did not converge ({e})")
    s = np.sqrt(np.clip(eigenvalues[::-1], 0.0, None))[: min(gram.shape[0], n_t)]
    capacity, rank, inverse = summarize_singular_values(s, budget.power_to_noise / n_t)
    return CapacityResult(float(capacity), s.tolist(), int(rank), float(inverse))


def siso_reference(budget: PowerBudget, frequency: float, separation: float, absorption: float, beta: float) -> float:
    """Capacity of the 1 x 1 link built under the budget's normalization."""
    geometry = LinkGeometry.symmetric(1, separation)
    channel = build_channel(geometry, frequency, absorption, [[beta]], budget.normalization)
    result = capacity_eig(channel, budget)
    logging.debug(f"SISO reference f={frequency!r} k={absorption!r} beta={beta!r}: {result.capacity:.6f}")
    return result.capacity
