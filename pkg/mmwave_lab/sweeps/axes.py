from typing import Iterable, List, Sequence

from ..errors import ConfigError, DomainError
from .base import BaseSweepAxis, SweepPoint


class FrequencyAxis(BaseSweepAxis):
    """Carrier sweep; k(f) comes from the atmosphere at each grid frequency."""

    def __init__(self):
        super().__init__("frequency")

    def points(self, spec) -> Iterable[SweepPoint]:
        for frequency in spec.grid:
            yield SweepPoint(frequency, spec.geometry, frequency, spec.atmosphere.coefficient(frequency))

    def required_frequencies(self, spec) -> List[float]:
        return list(spec.grid)

    @staticmethod
    def validate_grid(grid: Sequence[float]) -> bool:
        if any(value <= 0 for value in grid):
            raise DomainError("frequency grid values must be > 0 Hz")
        return True


class AbsorptionAxis(BaseSweepAxis):
    """Absorption-coefficient sweep at a fixed carrier; overrides the atmosphere."""

    def __init__(self):
        super().__init__("absorption")

    def points(self, spec) -> Iterable[SweepPoint]:
        for k in spec.grid:
            yield SweepPoint(k, spec.geometry, spec.frequency, k)

    def required_frequencies(self, spec) -> List[float]:
        return []

    @staticmethod
    def validate_grid(grid: Sequence[float]) -> bool:
        if any(value < 0 for value in grid):
            raise DomainError("absorption grid values must be >= 0 Np/m")
        return True


class AntennaCountAxis(BaseSweepAxis):
    """n x n array-size sweep at a fixed carrier."""

    def __init__(self):
        super().__init__("antennas")

    def points(self, spec) -> Iterable[SweepPoint]:
        k = spec.atmosphere.coefficient(spec.frequency)
        for n in spec.grid:
            yield SweepPoint(n, spec.geometry.with_element_count(int(n)), spec.frequency, k)

    def required_frequencies(self, spec) -> List[float]:
        return [spec.frequency]

    @staticmethod
    def validate_grid(grid: Sequence[float]) -> bool:
        for value in grid:
            if value < 1 or int(value) != value:
                raise ConfigError(f"antenna counts must be positive integers, got {value!r}")
        return True
