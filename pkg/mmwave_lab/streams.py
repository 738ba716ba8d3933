"""
Counter-based uniform streams for Monte-Carlo trials.

Every value is a pure function of (seed, trial_index, pair_index): a chain of
SplitMix64 finalizers over the three counters. No generator state is carried
between draws, so results do not depend on evaluation order or thread count.
"""

import numpy as np

from .errors import DomainError

_MASK = (1 << 64) - 1
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_SHIFT_30 = np.uint64(30)
_SHIFT_27 = np.uint64(27)
_SHIFT_31 = np.uint64(31)
_SHIFT_11 = np.uint64(11)
_TO_UNIT = 1.0 / float(1 << 53)

# Keys separating independent families of draws under one user seed
ANGLE_STREAM_KEY = 0x616E676C65  # "angle"


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _SHIFT_30)) * _MUL1
    z = (z ^ (z >> _SHIFT_27)) * _MUL2
    return z ^ (z >> _SHIFT_31)


def _as_u64(value) -> np.ndarray:
    if isinstance(value, (int, np.integer)):
        return np.array([int(value) & _MASK], dtype=np.uint64)
    return np.asarray(value).astype(np.int64).astype(np.uint64)


def _hash(seed, trial_indices, pair_indices) -> np.ndarray:
    with np.errstate(over="ignore"):
        key = _mix(_as_u64(seed) + _GAMMA)
        trial_key = _mix(key + _as_u64(trial_indices) * _GAMMA)
        return _mix(trial_key + (_as_u64(pair_indices) + np.uint64(1)) * _GAMMA)


def _to_unit(h: np.ndarray) -> np.ndarray:
    return (h >> _SHIFT_11).astype(np.float64) * _TO_UNIT


def derive_trial_stream(seed: int, trial_index: int, pair_index: int) -> float:
    """Uniform value in [0, 1) for one (seed, trial, pair) counter triple."""
    if seed < 0 or trial_index < 0 or pair_index < 0:
        raise DomainError("seed, trial_index and pair_index must be non-negative")
    return float(_to_unit(_hash(seed, trial_index, pair_index))[0])


def trial_uniforms(seed: int, trial_indices, count: int) -> np.ndarray:
    """
    Values for pair indices 0..count-1 of each trial, shape (len(trials), count).

    Elementwise identical to derive_trial_stream.
    """
    trials = np.asarray(trial_indices, dtype=np.int64).reshape(-1, 1)
    pairs = np.arange(count, dtype=np.int64).reshape(1, -1)
    trials, pairs = np.broadcast_arrays(trials, pairs)
    return _to_unit(_hash(seed, trials, pairs))


def derive_seed(seed: int, key: int) -> int:
    """Seed for an independent family of draws (e.g. array angles)."""
    with np.errstate(over="ignore"):
        return int(_mix(_as_u64(seed) ^ _as_u64(key))[0])
