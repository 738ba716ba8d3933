import threading
from typing import Dict

import numpy as np


class TrialResultStore:
    """
    Thread-safe store for per-chunk Monte-Carlo outputs.

    Workers store arrays under the index of the first trial in their chunk;
    assemble() concatenates them in trial order, so the reduction never
    depends on which worker finished first.
    """

    def __init__(self):
        self._data: Dict[int, Dict[str, np.ndarray]] = {}
        self._lock = threading.Lock()

    def store(self, chunk_start: int, data: Dict[str, np.ndarray]) -> None:
        """
        Store arrays for the chunk starting at `chunk_start`.

        Args:
            chunk_start: Trial index of the first trial in the chunk
            data: Arrays whose first axis runs over the chunk's trials,
                  e.g. {'capacity': ..., 'inverse_condition': ...}
        """
        with self._lock:
            if chunk_start not in self._data:
                self._data[chunk_start] = {}
            self._data[chunk_start].update(data)

    def assemble(self, key: str) -> np.ndarray:
        """Concatenate `key` across chunks in ascending trial order."""
        with self._lock:
            parts = [self._data[start][key] for start in sorted(self._data) if key in self._data[start]]
        if not parts:
            raise KeyError(f"No chunk stored '{key}'")
        return np.concatenate(parts, axis=0)
