"""
Monte-Carlo engine and sweep drivers.

Each trial draws one beta per transmit-receive pair (and, for random-angle
sweeps, one orientation pair) from counter-based streams, evaluates the
channel capacity, and stores the outputs by trial index. Trials run in
fixed-size chunks, optionally on a thread pool; results are assembled in
trial order so the output never depends on the degree of parallelism.
"""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .absorption import Atmosphere
from .errors import ConfigError, NumericalError
from .geometry import LinkGeometry, distance_matrix, distance_stack
from .mimo import (PowerBudget, capacity_from_gram, channel_entries,
                   singular_values, summarize_singular_values)
from .streams import ANGLE_STREAM_KEY, derive_seed, trial_uniforms
from .sweeps.base import SweepPoint, SweepVariable
from .sweeps.registry import axis_registry
from .trial_store import TrialResultStore

DEFAULT_TRIALS = 5000
CHUNK_SIZE = 500
THREADS_ENV_VAR = "MMWAVE_LAB_THREADS"


class AngleMode(Enum):
    FIXED = "fixed"
    RANDOM_PER_TRIAL = "random_per_trial"


@dataclass(frozen=True)
class TrialPlan:
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    percentile_low: float = 0.05
    percentile_high: float = 0.95

    def __post_init__(self):
        if isinstance(self.trials, bool) or int(self.trials) != self.trials or self.trials < 1:
            raise ConfigError(f"trials must be a positive integer, got {self.trials!r}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not 0.0 <= self.percentile_low < self.percentile_high <= 1.0:
            raise ConfigError(
                f"percentiles must satisfy 0 <= low < high <= 1, got {self.percentile_low}, {self.percentile_high}"
            )


@dataclass(frozen=True)
class CapacityStats:
    mean: float
    ci_low: float
    ci_high: float
    mean_inverse_condition: float
    mean_singular_values: List[float]
    siso_mean: float
    ensemble_capacity: float = 0.0
    ensemble_inverse_condition: float = 0.0
    ensemble_singular_values: List[float] = field(default_factory=list)
    siso_ensemble: float = 0.0
    trials: int = 0


@dataclass(frozen=True)
class SweepSpec:
    variable: SweepVariable
    grid: Tuple[float, ...]
    geometry: LinkGeometry
    budget: PowerBudget
    atmosphere: Optional[Atmosphere] = None
    angles: AngleMode = AngleMode.FIXED
    frequency: float = 60e9

    def __post_init__(self):
        grid = tuple(self.grid)
        if not grid:
            raise ConfigError("sweep grid must not be empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigError("sweep grid must be strictly increasing")
        if self.variable is not SweepVariable.ABSORPTION and self.atmosphere is None:
            raise ConfigError(f"a {self.variable.value} sweep needs an atmosphere (explicit k or gas mixture)")
        if not self.frequency > 0:
            raise ConfigError(f"frequency must be > 0 Hz, got {self.frequency}")
        axis_registry.get_axis(self.variable).validate_grid(grid)
        object.__setattr__(self, "grid", grid)


@dataclass(frozen=True)
class SweepRow:
    value: float
    absorption: float
    stats: CapacityStats


def resolve_workers(workers: Optional[int] = None) -> int:
    """Explicit value, else MMWAVE_LAB_THREADS, where 0 means one per CPU."""
    if workers is None:
        raw = os.environ.get(THREADS_ENV_VAR, "0").strip() or "0"
        try:
            workers = int(raw)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV_VAR} must be an integer, got '{raw}'")
    if workers < 0:
        raise ConfigError(f"worker count must be >= 0, got {workers}")
    return workers or (os.cpu_count() or 1)


def linear_grid(start: float, stop: float, step: float) -> Tuple[float, ...]:
    if not step > 0 or stop < start:
        raise ConfigError(f"linear grid needs step > 0 and stop >= start, got {start}, {stop}, {step}")
    count = int(round((stop - start) / step)) + 1
    return tuple(np.linspace(start, stop, count).tolist())


def log_grid(start: float, stop: float, points_per_decade: int = 60) -> Tuple[float, ...]:
    if not (start > 0 and stop > start and points_per_decade >= 1):
        raise ConfigError(f"log grid needs 0 < start < stop and points_per_decade >= 1")
    decades = math.log10(stop / start)
    count = int(round(decades * points_per_decade)) + 1
    grid = np.logspace(math.log10(start), math.log10(stop), count)
    grid[0], grid[-1] = start, stop
    return tuple(grid.tolist())


def _chunk_bounds(trials: int) -> List[Tuple[int, int]]:
    return [(start, min(start + CHUNK_SIZE, trials)) for start in range(0, trials, CHUNK_SIZE)]


def _stack_singular_values(h: np.ndarray, first_trial: int) -> np.ndarray:
    if not np.all(np.isfinite(h)):
        bad = int(np.argmax(~np.all(np.isfinite(h), axis=(-2, -1))))
        raise NumericalError("channel matrix has non-finite entries", trial_index=first_trial + bad)
    try:
        return singular_values(h)
    except NumericalError:
        # locate the failing trial
        for offset, matrix in enumerate(h):
            singular_values(matrix, trial_offset=first_trial + offset)
        raise


def _run_chunk(store, geometry, frequency, absorption, budget, plan, angles, bounds):
    start, stop = bounds
    trials = np.arange(start, stop)
    n_r, n_t = geometry.shape
    normalization = budget.normalization
    rho = budget.power_to_noise

    betas = trial_uniforms(plan.seed, trials, n_r * n_t).reshape(len(trials), n_r, n_t)
    if angles is AngleMode.RANDOM_PER_TRIAL:
        draws = trial_uniforms(derive_seed(plan.seed, ANGLE_STREAM_KEY), trials, 2)
        distances = distance_stack(geometry, frequency, math.pi * draws[:, 0], math.pi * draws[:, 1])
    else:
        distances = distance_matrix(geometry, frequency).entries

    h = channel_entries(distances, frequency, absorption, betas, normalization, geometry.separation)
    s = _stack_singular_values(h, start)
    capacity, _, inverse = summarize_singular_values(s, rho / n_t)
    gram = h @ np.conj(np.swapaxes(h, -1, -2))

    # SISO reference reuses the first pair's beta of every trial
    h_siso = channel_entries(geometry.separation, frequency, absorption, betas[:, 0, 0], normalization, geometry.separation)
    siso_power = np.abs(h_siso) ** 2
    siso_capacity = np.log2(1.0 + rho * siso_power)

    store.store(
        start,
        {
            "capacity": capacity,
            "inverse_condition": inverse,
            "singular_values": s,
            "gram": gram,
            "siso_capacity": siso_capacity,
            "siso_power": siso_power,
        },
    )
    logging.debug(f"Chunk trials {start}-{stop - 1} done")


def _mean_and_interval(values: np.ndarray, plan: TrialPlan) -> Tuple[float, float, float]:
    if values.min() == values.max():
        # degenerate distribution: report the common value exactly
        value = float(values[0])
        return value, value, value
    low, high = np.quantile(values, [plan.percentile_low, plan.percentile_high])
    mean = float(np.mean(values))
    # ulp-level spreads can put the float mean just outside the quantiles
    return mean, min(float(low), mean), max(float(high), mean)


def run_point(
    geometry: LinkGeometry,
    frequency: float,
    absorption: float,
    budget: PowerBudget,
    plan: TrialPlan,
    angles: AngleMode = AngleMode.FIXED,
    workers: Optional[int] = None,
) -> CapacityStats:
    """
    Monte-Carlo capacity statistics for one (geometry, f, k, budget) point.

    Per-trial capacities give the mean and percentile interval; the trial
    average of H H^dagger gives the ensemble diagnostics.
    """
    if not absorption >= 0:
        raise ConfigError(f"absorption must be >= 0 Np/m, got {absorption}")

    store = TrialResultStore()
    chunks = _chunk_bounds(plan.trials)
    workers = min(resolve_workers(workers), len(chunks))

    def task(bounds):
        _run_chunk(store, geometry, frequency, absorption, budget, plan, angles, bounds)

    if workers == 1:
        for bounds in chunks:
            task(bounds)
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            list(executor.map(task, chunks))

    capacity = store.assemble("capacity")
    mean, ci_low, ci_high = _mean_and_interval(capacity, plan)
    siso_mean, _, _ = _mean_and_interval(store.assemble("siso_capacity"), plan)

    n_t = geometry.shape[1]
    ensemble = capacity_from_gram(np.mean(store.assemble("gram"), axis=0), budget, n_t)
    siso_ensemble = math.log2(1.0 + budget.power_to_noise * float(np.mean(store.assemble("siso_power"))))

    return CapacityStats(
        mean=mean,
        ci_low=ci_low,
        ci_high=ci_high,
        mean_inverse_condition=float(np.mean(store.assemble("inverse_condition"))),
        mean_singular_values=np.mean(store.assemble("singular_values"), axis=0).tolist(),
        siso_mean=siso_mean,
        ensemble_capacity=ensemble.capacity,
        ensemble_inverse_condition=ensemble.inverse_condition,
        ensemble_singular_values=ensemble.singular_values,
        siso_ensemble=siso_ensemble,
        trials=plan.trials,
    )


def resolve_points(spec: SweepSpec) -> List[SweepPoint]:
    """Check atmosphere coverage for the whole grid, then resolve every point."""
    axis = axis_registry.get_axis(spec.variable)
    if spec.atmosphere is not None:
        spec.atmosphere.check_covers(axis.required_frequencies(spec))
    return list(axis.points(spec))


def sweep(spec: SweepSpec, plan: TrialPlan, workers: Optional[int] = None) -> List[SweepRow]:
    """One CapacityStats row per grid value, in grid order."""
    points = resolve_points(spec)
    logging.info(
        f"Sweeping {spec.variable.value} over {len(points)} point(s), {plan.trials} trial(s) each, "
        f"budget {spec.budget.describe()}, angles {spec.angles.value}"
    )

    rows = []
    for point in points:
        stats = run_point(point.geometry, point.frequency, point.absorption, spec.budget, plan, spec.angles, workers)
        logging.info(
            f"{spec.variable.value}={point.value!r} k={point.absorption:.6g}: "
            f"mean {stats.mean:.4f} bit/s/Hz [{stats.ci_low:.4f}, {stats.ci_high:.4f}]"
        )
        rows.append(SweepRow(point.value, point.absorption, stats))
    return rows
