from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterable, List, Sequence

from ..geometry import LinkGeometry

if TYPE_CHECKING:
    from ..experiments import SweepSpec


class SweepVariable(Enum):
    FREQUENCY = "frequency"
    ABSORPTION = "absorption"
    ANTENNAS = "antennas"


@dataclass(frozen=True)
class SweepPoint:
    """One grid value resolved into the inputs of run_point."""

    value: float
    geometry: LinkGeometry
    frequency: float
    absorption: float


class BaseSweepAxis(ABC):

    def __init__(self, name: str):
        self.name = name

    @abstractmethod
    def points(self, spec: "SweepSpec") -> Iterable[SweepPoint]:
        """
        Resolve every grid value of the spec into a SweepPoint.

        Args:
            spec: The sweep definition (grid, atmosphere, geometry template)

        Returns:
            SweepPoints in grid order
        """
        pass

    @abstractmethod
    def required_frequencies(self, spec: "SweepSpec") -> List[float]:
        """Frequencies the atmosphere must cover before any trial runs."""
        pass

    @staticmethod
    def validate_grid(grid: Sequence[float]) -> bool:
        """
        Validate axis-specific grid values.

        Raises:
            ValueError: If the grid holds values the axis cannot use
        """
        return True
