import json
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import yaml

from .absorption import (AbsorptionSpectrum, Atmosphere, GasMixture, find_preset,
                         load_mixture_file, load_spectrum_file, synthetic_spectra)
from .config_validator import ConfigValidator
from .errors import ConfigError
from .experiments import AngleMode, SweepSpec, TrialPlan, linear_grid, log_grid
from .geometry import LinkGeometry
from .mimo import DEFAULT_NOISE_DBM, DEFAULT_SNR_DB, DEFAULT_TX_POWER_W, PowerBudget
from .sweeps.base import SweepVariable
from .yaml_loader import load_document

DEFAULT_FREQUENCY_HZ = 60e9
DEFAULT_ELEMENT_COUNT = 3
DEFAULT_DISTANCE_M = 50.0


@dataclass(frozen=True)
class RunConfig:
    """Everything a sweep needs, resolved from one config document."""

    spec: SweepSpec
    plan: TrialPlan
    output_path: str
    output_format: str = "csv"
    source: str = ""
    spectra: Dict[str, AbsorptionSpectrum] = field(default_factory=dict)


class ConfigLoader:
    def __init__(self, config_dir: str = "configs", validate: bool = True):
        self.config_dir = config_dir
        self.validate = validate
        self.validator = ConfigValidator()

    def resolve_path(self, config_file: str) -> str:
        # Handle both relative and absolute paths
        if not os.path.isabs(config_file):
            config_path = os.path.join(self.config_dir, config_file)
        else:
            config_path = config_file

        # If file doesn't exist in config_dir, try relative to current directory
        if not os.path.exists(config_path):
            config_path = config_file

        if not os.path.exists(config_path):
            raise FileNotFoundError(f"Configuration file not found: {config_file}")
        return config_path

    def load_config(self, config_file: str) -> Dict[str, Any]:
        """
        Load configuration from a YAML or JSON file.

        Args:
            config_file: Path to the configuration file

        Returns:
            Dictionary containing the configuration
        """
        config_path = self.resolve_path(config_file)

        with open(config_path, "rb") as f:
            data = f.read()
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ConfigError(f"{config_path}: not UTF-8 text (byte offset {e.start})")
        config = parse_document(text, config_path)

        if self.validate:
            is_valid, errors, warnings = self.validator.validate(config, config_file)
            if not is_valid:
                error_msg = f"Config validation failed for '{config_file}':\n"
                error_msg += "\n".join([f"  - {err}" for err in errors])
                raise ConfigError(error_msg)

        return config

    def load_run_config(self, config_file: str) -> RunConfig:
        """Load, validate and resolve a config file into a RunConfig."""
        config_path = self.resolve_path(config_file)
        config = self.load_config(config_path)
        return build_run_config(config, base_dir=os.path.dirname(os.path.abspath(config_path)), source=config_path)


def parse_document(text: str, config_path: str = "config") -> Any:
    """Parse by extension; unknown extensions try YAML (a JSON superset)."""
    if config_path.endswith(".json"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{config_path}: invalid JSON ({e.msg})", line=e.lineno)
    try:
        return load_document(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        problem = getattr(e, "problem", None) or "invalid YAML"
        raise ConfigError(f"{config_path}: {problem}", line=mark.line + 1 if mark else None)


def _resolve_data_path(path: str, base_dir: Optional[str]) -> str:
    if os.path.isabs(path) or os.path.exists(path) or base_dir is None:
        return path
    candidate = os.path.join(base_dir, path)
    return candidate if os.path.exists(candidate) else path


def load_spectra(data_paths: List[Any], base_dir: Optional[str] = None) -> Dict[str, AbsorptionSpectrum]:
    spectra = {}
    for entry in data_paths:
        if isinstance(entry, str):
            entry = {"path": entry}
        path = _resolve_data_path(entry["path"], base_dir)
        if not os.path.exists(path):
            raise FileNotFoundError(f"Spectrum file not found: {entry['path']}")
        spectrum = load_spectrum_file(
            path,
            species=entry.get("species"),
            temperature=entry.get("temperature_k"),
            pressure=entry.get("pressure_atm"),
        )
        if spectrum.species in spectra:
            logging.warning(f"Spectrum for {spectrum.species} loaded twice; keeping {path}")
        spectra[spectrum.species] = spectrum
    return spectra


def build_grid(grid: Any) -> tuple:
    if isinstance(grid, list):
        return tuple(float(value) for value in grid)
    if "points_per_decade" in grid:
        return log_grid(float(grid["start"]), float(grid["stop"]), int(grid["points_per_decade"]))
    return linear_grid(float(grid["start"]), float(grid["stop"]), float(grid["step"]))


def build_budget(budget: Dict[str, Any]) -> PowerBudget:
    if budget.get("mode", "constant_snr") == "constant_snr":
        return PowerBudget.constant_snr(float(budget.get("snr_db", DEFAULT_SNR_DB)))
    return PowerBudget.constant_power(
        float(budget.get("power_w", DEFAULT_TX_POWER_W)),
        float(budget.get("noise_dbm", DEFAULT_NOISE_DBM)),
    )


def build_geometry(geometry: Dict[str, Any]) -> LinkGeometry:
    return LinkGeometry.symmetric(
        int(geometry.get("n", DEFAULT_ELEMENT_COUNT)),
        separation=float(geometry.get("distance_m", DEFAULT_DISTANCE_M)),
        spacing_wavelengths=float(geometry.get("spacing_wavelengths", 0.5)),
        phi=math.radians(float(geometry.get("phi_deg", 90.0))),
        theta=math.radians(float(geometry.get("theta_deg", 90.0))),
    )


def build_atmosphere(
    atmosphere: Dict[str, Any], spectra: Dict[str, AbsorptionSpectrum], base_dir: Optional[str] = None
) -> Atmosphere:
    if "k_per_m" in atmosphere:
        return Atmosphere.constant(float(atmosphere["k_per_m"]))

    if "preset" in atmosphere:
        mixture = find_preset(atmosphere["preset"])
    elif "mixture_file" in atmosphere:
        mixture = load_mixture_file(_resolve_data_path(atmosphere["mixture_file"], base_dir))
    else:
        mixture = GasMixture("custom", tuple((str(s), float(x)) for s, x in atmosphere["mixture"].items()))

    if not spectra:
        logging.warning(f"No data_paths given for mixture '{mixture.name}'; using the SYNTHETIC spectra")
        spectra = synthetic_spectra()
    return Atmosphere(mixture=mixture, spectra=spectra)


def build_run_config(config: Dict[str, Any], base_dir: Optional[str] = None, source: str = "") -> RunConfig:
    """Turn a validated config document into spec, plan and output settings."""
    experiment = config["experiment"]
    variable = SweepVariable(experiment["variable"])

    spectra = load_spectra(config.get("data_paths", []), base_dir)
    atmosphere = None
    if variable is not SweepVariable.ABSORPTION:
        atmosphere = build_atmosphere(experiment["atmosphere"], spectra, base_dir)

    spec = SweepSpec(
        variable=variable,
        grid=build_grid(experiment["grid"]),
        geometry=build_geometry(experiment.get("geometry", {})),
        budget=build_budget(experiment.get("budget", {})),
        atmosphere=atmosphere,
        angles=AngleMode(experiment.get("angles", "fixed")),
        frequency=float(experiment.get("frequency_hz", DEFAULT_FREQUENCY_HZ)),
    )

    low, high = config.get("percentiles", [0.05, 0.95])
    plan = TrialPlan(
        trials=int(config.get("trials", 5000)),
        seed=int(config.get("seed", 0)),
        percentile_low=float(low),
        percentile_high=float(high),
    )

    return RunConfig(
        spec=spec,
        plan=plan,
        output_path=config["output_path"],
        output_format=config.get("output_format", "csv"),
        source=source,
        spectra=spectra,
    )
