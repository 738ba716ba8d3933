"""
Absorption spectra, gas mixtures and the medium absorption coefficient.

Spectra are sampled k_i(f) curves in nepers per meter on a hertz grid. A gas
mixture weights the species curves by mole fraction to give the medium
coefficient k(f). Values are only ever interpolated, never extrapolated.
"""

import io
import logging
import math
import os
from dataclasses import dataclass, field
from typing import IO, Dict, Iterable, List, Mapping, Optional, Tuple, Union

import numpy as np
import yaml

from .errors import (ConfigError, ConsistencyError, DomainError,
                     FrequencyRangeError, OrderingError, SpectrumParseError,
                     SpeciesLookupError)
from .yaml_loader import load_document

CSV_HEADER = "frequency_hz,k_per_m"
FRACTION_SUM_TOLERANCE = 1e-6

# Reference conditions of the bundled synthetic dataset
SYNTHETIC_TEMPERATURE_K = 273.0
SYNTHETIC_PRESSURE_ATM = 1.0


@dataclass(frozen=True)
class AbsorptionSpectrum:
    """Sampled absorption coefficient of one species at fixed temperature and pressure."""

    species: str
    temperature: float
    pressure: float
    frequencies: np.ndarray
    coefficients: np.ndarray

    def __post_init__(self):
        freqs = np.array(self.frequencies, dtype=float)
        coeffs = np.array(self.coefficients, dtype=float)

        if self.temperature <= 0:
            raise DomainError(f"Spectrum '{self.species}': temperature must be > 0 K, got {self.temperature}")
        if self.pressure <= 0:
            raise DomainError(f"Spectrum '{self.species}': pressure must be > 0 atm, got {self.pressure}")
        if freqs.ndim != 1 or freqs.shape != coeffs.shape:
            raise SpectrumParseError(f"Spectrum '{self.species}': frequencies and coefficients must be equal-length 1-D")
        if freqs.size < 2:
            raise SpectrumParseError(f"Spectrum '{self.species}': at least 2 samples required, got {freqs.size}")
        if not np.all(np.isfinite(freqs)) or not np.all(np.isfinite(coeffs)):
            raise SpectrumParseError(f"Spectrum '{self.species}': samples must be finite")
        if np.any(np.diff(freqs) <= 0):
            raise OrderingError(f"Spectrum '{self.species}': frequencies must be strictly increasing")
        if np.any(coeffs < 0):
            raise DomainError(f"Spectrum '{self.species}': coefficients must be >= 0")

        freqs.setflags(write=False)
        coeffs.setflags(write=False)
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def samples(self) -> List[Tuple[float, float]]:
        return list(zip(self.frequencies.tolist(), self.coefficients.tolist()))

    @property
    def min_frequency(self) -> float:
        return float(self.frequencies[0])

    @property
    def max_frequency(self) -> float:
        return float(self.frequencies[-1])

    def covers(self, frequency: float) -> bool:
        return self.min_frequency <= frequency <= self.max_frequency


@dataclass(frozen=True)
class GasMixture:
    """Named set of (species, mole fraction) pairs. Trace gases may be omitted."""

    name: str
    components: Tuple[Tuple[str, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        components = tuple((str(species), float(fraction)) for species, fraction in self.components)
        seen = set()
        for species, fraction in components:
            if species in seen:
                raise ConfigError(f"Mixture '{self.name}': duplicate species '{species}'")
            seen.add(species)
            if not 0.0 <= fraction <= 1.0:
                raise DomainError(f"Mixture '{self.name}': mole fraction of {species} must be in [0, 1], got {fraction}")
        total = math.fsum(fraction for _, fraction in components)
        if total > 1.0 + FRACTION_SUM_TOLERANCE:
            raise DomainError(f"Mixture '{self.name}': mole fractions sum to {total}, above 1")
        object.__setattr__(self, "components", components)

    @property
    def species(self) -> List[str]:
        return [species for species, _ in self.components]

    def fraction(self, species: str) -> float:
        for name, fraction in self.components:
            if name == species:
                return fraction
        raise SpeciesLookupError(f"Mixture '{self.name}' has no species '{species}'")

    def as_dict(self) -> Dict[str, float]:
        return dict(self.components)

    def scaled(self, factor: float) -> "GasMixture":
        return GasMixture(self.name, tuple((s, m * factor) for s, m in self.components))


@dataclass(frozen=True)
class MediumCoefficient:
    value: float
    frequency: float

    def __post_init__(self):
        if self.value < 0:
            raise DomainError(f"Medium coefficient must be >= 0, got {self.value}")

    def __float__(self) -> float:
        return float(self.value)


def _read_text(source: Union[bytes, str, IO], name: str = "spectrum") -> str:
    if isinstance(source, str):
        return source
    data = source if isinstance(source, bytes) else source.read()
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise SpectrumParseError(f"{name}: not UTF-8 text (byte offset {e.start})")


def parse_metadata(source: Union[bytes, str, IO]) -> Dict[str, str]:
    """Collect `# key: value` comment lines from a spectrum CSV."""
    metadata = {}
    for line in _read_text(source).splitlines():
        stripped = line.strip()
        if not stripped.startswith("#"):
            continue
        body = stripped[1:].strip()
        if ":" in body:
            key, value = body.split(":", 1)
            metadata[key.strip().lower()] = value.strip()
    return metadata


def parse_spectrum(
    source: Union[bytes, str, IO], species: str, temperature: float, pressure: float
) -> AbsorptionSpectrum:
    """
    Parse a `frequency_hz,k_per_m` CSV into a spectrum.

    Rows must already be in ascending frequency order; they are rejected,
    never reordered.

    Raises:
        SpectrumParseError: missing header or malformed row (with line number)
        OrderingError: non-increasing frequencies
        DomainError: negative coefficient
    """
    text = _read_text(source)
    header_seen = False
    frequencies = []
    coefficients = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        if not header_seen:
            if line.replace(" ", "") != CSV_HEADER:
                raise SpectrumParseError(f"expected header '{CSV_HEADER}', got '{line}'", line=line_no)
            header_seen = True
            continue

        fields = [part.strip() for part in line.split(",")]
        if len(fields) != 2:
            raise SpectrumParseError(f"expected 2 fields, got {len(fields)}", line=line_no)
        try:
            frequency = float(fields[0])
            coefficient = float(fields[1])
        except ValueError:
            raise SpectrumParseError(f"non-numeric value in row '{line}'", line=line_no)
        if not (math.isfinite(frequency) and math.isfinite(coefficient)):
            raise SpectrumParseError(f"non-finite value in row '{line}'", line=line_no)
        if frequencies and frequency <= frequencies[-1]:
            raise OrderingError(
                f"frequency {fields[0]} does not increase after {frequencies[-1]!r}", line=line_no
            )
        if coefficient < 0:
            raise DomainError(f"line {line_no}: negative absorption coefficient {fields[1]}")

        frequencies.append(frequency)
        coefficients.append(coefficient)

    if not header_seen:
        raise SpectrumParseError(f"missing header '{CSV_HEADER}'")

    return AbsorptionSpectrum(species, temperature, pressure, frequencies, coefficients)


def write_spectrum(spectrum: AbsorptionSpectrum, comments: Iterable[str] = ()) -> str:
    """Serialize a spectrum to CSV, floats in shortest round-trip form."""
    out = io.StringIO()
    for comment in comments:
        out.write(f"# {comment}\n")
    out.write(f"# species: {spectrum.species}\n")
    out.write(f"# temperature_k: {spectrum.temperature!r}\n")
    out.write(f"# pressure_atm: {spectrum.pressure!r}\n")
    out.write(f"{CSV_HEADER}\n")
    for frequency, coefficient in spectrum.samples:
        out.write(f"{frequency!r},{coefficient!r}\n")
    return out.getvalue()


def load_spectrum_file(
    path: str,
    species: Optional[str] = None,
    temperature: Optional[float] = None,
    pressure: Optional[float] = None,
) -> AbsorptionSpectrum:
    """
    Load a spectrum CSV. Missing arguments fall back to the file's comment
    metadata, then to the file stem and the 273 K / 1 atm reference conditions.
    """
    with open(path, "rb") as f:
        text = _read_text(f.read(), path)

    metadata = parse_metadata(text)
    if species is None:
        species = metadata.get("species") or os.path.splitext(os.path.basename(path))[0]
    try:
        if temperature is None:
            temperature = float(metadata.get("temperature_k", SYNTHETIC_TEMPERATURE_K))
        if pressure is None:
            pressure = float(metadata.get("pressure_atm", SYNTHETIC_PRESSURE_ATM))
    except ValueError as e:
        raise SpectrumParseError(f"{path}: bad metadata value ({e})")

    spectrum = parse_spectrum(text, species, temperature, pressure)
    logging.debug(
        f"Loaded spectrum {species} from {path}: {len(spectrum.frequencies)} samples, "
        f"{spectrum.min_frequency:.6g}-{spectrum.max_frequency:.6g} Hz"
    )
    return spectrum


def interpolate(spectrum: AbsorptionSpectrum, frequency: float) -> MediumCoefficient:
    """Linear interpolation between bracketing samples; exact at sample points."""
    if not spectrum.covers(frequency):
        raise FrequencyRangeError(
            f"Frequency {frequency!r} Hz outside spectrum '{spectrum.species}' range "
            f"[{spectrum.min_frequency!r}, {spectrum.max_frequency!r}]"
        )
    value = float(np.interp(frequency, spectrum.frequencies, spectrum.coefficients))
    return MediumCoefficient(value, frequency)


def _index_spectra(
    spectra: Union[Mapping[str, AbsorptionSpectrum], Iterable[AbsorptionSpectrum]]
) -> Dict[str, AbsorptionSpectrum]:
    if isinstance(spectra, Mapping):
        return dict(spectra)
    indexed = {}
    for spectrum in spectra:
        if spectrum.species in indexed:
            raise ConsistencyError(f"Duplicate spectrum for species '{spectrum.species}'")
        indexed[spectrum.species] = spectrum
    return indexed


def check_mixture_spectra(
    mixture: GasMixture,
    spectra: Union[Mapping[str, AbsorptionSpectrum], Iterable[AbsorptionSpectrum]],
) -> Dict[str, AbsorptionSpectrum]:
    """Return the spectra the mixture needs, checking presence and shared conditions."""
    indexed = _index_spectra(spectra)
    used = {}
    for species in mixture.species:
        if species not in indexed:
            raise SpeciesLookupError(
                f"Mixture '{mixture.name}' needs a spectrum for '{species}'; "
                f"available: {', '.join(sorted(indexed)) or 'none'}"
            )
        used[species] = indexed[species]

    conditions = {(s.temperature, s.pressure) for s in used.values()}
    if len(conditions) > 1:
        described = ", ".join(f"{s.species}@{s.temperature}K/{s.pressure}atm" for s in used.values())
        raise ConsistencyError(f"Mixture '{mixture.name}' spectra disagree on conditions: {described}")
    return used


def mixture_coefficient(
    mixture: GasMixture,
    spectra: Union[Mapping[str, AbsorptionSpectrum], Iterable[AbsorptionSpectrum]],
    frequency: float,
) -> MediumCoefficient:
    """k(f) = sum_i m_i k_i(f) over the mixture components."""
    used = check_mixture_spectra(mixture, spectra)
    terms = [fraction * interpolate(used[species], frequency).value for species, fraction in mixture.components]
    return MediumCoefficient(math.fsum(terms), frequency)


# Atmosphere standard gas mixtures, percent values from the HITRAN gas-mixture
# tool divided by 100 and kept at full printed precision.
_PRESET_TABLE = [
    (
        "USA model, mean latitude, summer",
        [("H2O", 0.0186), ("CO2", 0.00033), ("O3", 3e-08), ("N2O", 3.2e-07),
         ("CO", 1.5e-07), ("CH4", 1.7e-06), ("O2", 0.20900001), ("N2", 0.77206)],
    ),
    (
        "USA model, mean latitude, winter",
        [("H2O", 0.00432), ("CO2", 0.00033), ("O3", 3e-08), ("N2O", 3.2e-07),
         ("CO", 1.5e-07), ("CH4", 1.7e-06), ("O2", 0.20900001), ("N2", 0.78634779)],
    ),
    (
        "USA model, high latitude, summer",
        [("H2O", 0.0119), ("CO2", 0.00033), ("O3", 2e-08), ("N2O", 3.1e-07),
         ("CO", 1.5e-07), ("CH4", 1.7e-06), ("O2", 0.20900001), ("N2", 0.77876781)],
    ),
    (
        "USA model, high latitude, winter",
        [("H2O", 0.00141), ("CO2", 0.00033), ("O3", 2e-08), ("N2O", 3.2e-07),
         ("CO", 1.5e-07), ("CH4", 1.7e-06), ("O2", 0.20900001), ("N2", 0.7892578)],
    ),
    (
        "USA model, tropics",
        [("H2O", 0.0259), ("CO2", 0.00033), ("O3", 3e-08), ("N2O", 3.2e-07),
         ("CO", 1.5e-07), ("CH4", 1.7e-06), ("O2", 0.20900001), ("N2", 0.76476779)],
    ),
]


def builtin_presets() -> List[GasMixture]:
    return [GasMixture(name, tuple(components)) for name, components in _PRESET_TABLE]


def find_preset(name: str) -> GasMixture:
    wanted = name.strip().lower()
    for preset in builtin_presets():
        if preset.name.lower() == wanted:
            return preset
    names = ", ".join(f"'{p.name}'" for p in builtin_presets())
    raise SpeciesLookupError(f"Unknown preset '{name}'. Available: {names}")


def load_mixture_file(path: str, name: Optional[str] = None) -> GasMixture:
    """
    Load a mixture document: either a flat `species: fraction` mapping or
    `{name: ..., components: {species: fraction}}`.
    """
    # binary read: PyYAML reports undecodable bytes as a YAMLError
    with open(path, "rb") as f:
        try:
            document = load_document(f)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            raise ConfigError(f"{path}: invalid mixture document", line=mark.line + 1 if mark else None)

    if not isinstance(document, dict):
        raise ConfigError(f"{path}: mixture document must be a mapping of species to mole fraction")

    if "components" in document:
        components = document["components"]
        name = name or document.get("name")
    else:
        components = document
    if not isinstance(components, dict):
        raise ConfigError(f"{path}: 'components' must be a mapping", field="components")

    for species, fraction in components.items():
        if isinstance(fraction, bool) or not isinstance(fraction, (int, float)):
            raise ConfigError(f"{path}: mole fraction of '{species}' must be a number", field=str(species))

    return GasMixture(name or os.path.splitext(os.path.basename(path))[0], tuple(components.items()))


@dataclass(frozen=True)
class Atmosphere:
    """Either a constant coefficient or a mixture evaluated over species spectra."""

    k_per_m: Optional[float] = None
    mixture: Optional[GasMixture] = None
    spectra: Mapping[str, AbsorptionSpectrum] = field(default_factory=dict)

    def __post_init__(self):
        if (self.k_per_m is None) == (self.mixture is None):
            raise ConfigError("Atmosphere needs exactly one of an explicit k or a gas mixture")
        if self.k_per_m is not None and not self.k_per_m >= 0:
            raise DomainError(f"Absorption coefficient must be >= 0, got {self.k_per_m}")
        if self.mixture is not None:
            object.__setattr__(self, "spectra", check_mixture_spectra(self.mixture, self.spectra))

    @classmethod
    def constant(cls, k_per_m: float) -> "Atmosphere":
        return cls(k_per_m=float(k_per_m))

    @property
    def label(self) -> str:
        return self.mixture.name if self.mixture is not None else f"k={self.k_per_m!r}"

    def coefficient(self, frequency: float) -> float:
        if self.mixture is None:
            return float(self.k_per_m)
        return mixture_coefficient(self.mixture, self.spectra, frequency).value

    def check_covers(self, frequencies: Iterable[float]) -> None:
        """Raise FrequencyRangeError naming the first uncovered frequency."""
        if self.mixture is None:
            return
        for frequency in frequencies:
            for spectrum in self.spectra.values():
                if not spectrum.covers(frequency):
                    raise FrequencyRangeError(
                        f"Atmosphere '{self.mixture.name}': species {spectrum.species} spectrum covers "
                        f"[{spectrum.min_frequency!r}, {spectrum.max_frequency!r}] Hz, "
                        f"not {frequency!r} Hz"
                    )


# Synthetic line list: (center Hz, half width Hz, peak nepers per meter of the
# pure species). Qualitative only; the grid matches data/synthetic/*.csv.
SYNTHETIC_LINES = {
    "O2": [(60e9, 2.5e9, 0.1292), (120e9, 1.5e9, 0.07)],
    "H2O": [(180e9, 3.0e9, 1.5)],
}
SYNTHETIC_H2O_CONTINUUM = 1e-3  # at 100 GHz, scales as f^2
SYNTHETIC_SPECIES = ("H2O", "CO2", "O3", "N2O", "CO", "CH4", "O2", "N2")


def synthetic_coefficients(species: str, frequencies: np.ndarray) -> np.ndarray:
    f = np.asarray(frequencies, dtype=float)
    k = np.zeros_like(f)
    for center, width, peak in SYNTHETIC_LINES.get(species, []):
        k += peak * width**2 / ((f - center) ** 2 + width**2)
    if species == "H2O":
        k += SYNTHETIC_H2O_CONTINUUM * (f / 100e9) ** 2
    return k


def synthetic_spectra(
    start: float = 50e9, stop: float = 200e9, step: float = 0.5e9
) -> Dict[str, AbsorptionSpectrum]:
    """SYNTHETIC three-spike dataset (O2 at 60/120 GHz, H2O at 180 GHz), 273 K, 1 atm."""
    count = int(round((stop - start) / step)) + 1
    frequencies = np.linspace(start, stop, count)
    return {
        species: AbsorptionSpectrum(
            species,
            SYNTHETIC_TEMPERATURE_K,
            SYNTHETIC_PRESSURE_ATM,
            frequencies,
            synthetic_coefficients(species, frequencies),
        )
        for species in SYNTHETIC_SPECIES
    }
