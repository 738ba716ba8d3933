"""
Exception hierarchy shared by every mmwave_lab module.

The CLI maps these classes onto disjoint exit codes, so new failure modes
should subclass the closest existing class rather than raise bare ValueError.
"""

from typing import Optional


class MmwaveLabError(Exception):
    """Base class for all simulator errors."""


class ConfigError(MmwaveLabError, ValueError):
    """Invalid configuration, usage, or input document."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        prefix = ""
        if field:
            prefix += f"{field}: "
        if line is not None:
            prefix += f"line {line}: "
        super().__init__(f"{prefix}{message}")


class SpectrumParseError(ConfigError):
    """Malformed spectrum CSV row."""


class OrderingError(SpectrumParseError):
    """Spectrum frequencies are not strictly increasing."""


class DomainError(MmwaveLabError, ValueError):
    """A value lies outside its physical domain (e.g. negative absorption)."""


class FrequencyRangeError(MmwaveLabError, ValueError):
    """A frequency falls outside the sampled range of a spectrum."""


class SpeciesLookupError(MmwaveLabError, KeyError):
    """A species spectrum or preset could not be found."""

    def __str__(self) -> str:
        # KeyError quotes its argument; keep the message readable
        return str(self.args[0]) if self.args else ""


class ConsistencyError(MmwaveLabError, ValueError):
    """Spectra combined in one mixture disagree on temperature or pressure."""


class ShapeError(MmwaveLabError, ValueError):
    """Array dimensions do not match the link geometry."""


class BudgetModeError(ConfigError):
    """Channel normalization does not pair with the power budget mode."""


class NumericalError(MmwaveLabError, ArithmeticError):
    """Linear algebra failed to converge."""

    def __init__(self, message: str, trial_index: Optional[int] = None):
        self.trial_index = trial_index
        if trial_index is not None:
            message = f"trial {trial_index}: {message}"
        super().__init__(message)
