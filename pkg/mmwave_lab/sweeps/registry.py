from typing import Dict

from ..errors import ConfigError
from .axes import AbsorptionAxis, AntennaCountAxis, FrequencyAxis
from .base import BaseSweepAxis, SweepVariable


class SweepAxisRegistry:

    def __init__(self):
        self._axes: Dict[str, BaseSweepAxis] = {}
        self._register_default_axes()

    def _register_default_axes(self):
        default_axes = [
            FrequencyAxis(),
            AbsorptionAxis(),
            AntennaCountAxis(),
        ]

        for axis in default_axes:
            self.register_axis(axis)

    def register_axis(self, axis: BaseSweepAxis):
        self._axes[axis.name] = axis

    def get_axis(self, name) -> BaseSweepAxis:
        if isinstance(name, SweepVariable):
            name = name.value
        if name not in self._axes:
            raise ConfigError(f"Sweep axis not found: {name}. Available: {', '.join(self._axes)}")
        return self._axes[name]

    def list_axes(self) -> list:
        return list(self._axes.keys())


axis_registry = SweepAxisRegistry()
