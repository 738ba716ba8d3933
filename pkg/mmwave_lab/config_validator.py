"""
Config Validator - Validates experiment run configs for common errors and required fields.
"""

import logging
from typing import Any, Dict, List, Tuple

from .absorption import builtin_presets
from .sweeps.registry import axis_registry

VALID_ANGLES = ["fixed", "random_per_trial"]
VALID_BUDGET_MODES = ["constant_snr", "constant_power"]
VALID_OUTPUT_FORMATS = ["csv", "json"]
ATMOSPHERE_SOURCES = ["k_per_m", "preset", "mixture", "mixture_file"]


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_integer(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


class ConfigValidator:
    """Validates run configuration documents for correctness and completeness."""

    def __init__(self):
        self.errors = []
        self.warnings = []

    def validate(
        self, config: Dict[str, Any], config_file: str = "config"
    ) -> Tuple[bool, List[str], List[str]]:
        """
        Validate a run configuration.

        Returns:
            Tuple of (is_valid, errors, warnings)
        """
        self.errors = []
        self.warnings = []

        if not isinstance(config, dict):
            self.errors.append("Config must be a mapping with an 'experiment' section")
            return False, self.errors, self.warnings

        self._validate_top_level_keys(config)
        self._validate_required_fields(config)
        self._validate_experiment(config)
        self._validate_data_paths(config)
        self._validate_plan(config)
        self._validate_output(config)

        for warning in self.warnings:
            logging.warning(f"{config_file}: {warning}")

        is_valid = len(self.errors) == 0
        return is_valid, self.errors, self.warnings

    def _validate_top_level_keys(self, config: Dict[str, Any]):
        valid_top_level_keys = [
            "description",
            "experiment",
            "data_paths",
            "output_path",
            "output_format",
            "seed",
            "trials",
            "percentiles",
        ]

        # Unknown top-level keys are errors, not warnings
        for key in config.keys():
            if key not in valid_top_level_keys:
                self.errors.append(
                    f"Invalid top-level field '{key}'. Valid fields: {', '.join(valid_top_level_keys)}. "
                    "Check for typos."
                )

    def _validate_required_fields(self, config: Dict[str, Any]):
        for field in ["experiment", "output_path"]:
            if field not in config:
                self.errors.append(f"Missing required field: '{field}'")

    def _warn_unknown_keys(self, section: Dict[str, Any], valid_keys: List[str], path: str):
        for key in section.keys():
            if key not in valid_keys:
                self.warnings.append(
                    f"{path}: Unknown field '{key}'. Valid fields: {', '.join(valid_keys)}. "
                    "This might be a typo."
                )

    def _validate_experiment(self, config: Dict[str, Any]):
        experiment = config.get("experiment")
        if experiment is None:
            return
        if not isinstance(experiment, dict):
            self.errors.append("'experiment' must be a dictionary")
            return

        self._warn_unknown_keys(
            experiment,
            ["variable", "grid", "frequency_hz", "atmosphere", "geometry", "budget", "angles"],
            "experiment",
        )

        variable = experiment.get("variable")
        if variable is None:
            self.errors.append("experiment: Missing required field 'variable'")
        elif variable not in axis_registry.list_axes():
            self.errors.append(
                f"experiment.variable: Invalid value '{variable}'. Valid options: {', '.join(axis_registry.list_axes())}"
            )

        if "grid" not in experiment:
            self.errors.append("experiment: Missing required field 'grid'")
        else:
            self._validate_grid(experiment["grid"], variable, "experiment.grid")

        if "frequency_hz" in experiment:
            frequency = experiment["frequency_hz"]
            if not _is_number(frequency) or frequency <= 0:
                self.errors.append(f"experiment.frequency_hz: Must be a number > 0, got '{frequency}'")
        elif variable in ("absorption", "antennas"):
            self.warnings.append("experiment.frequency_hz: Not set, using 60 GHz")

        if "atmosphere" in experiment:
            if variable == "absorption":
                self.warnings.append(
                    "experiment.atmosphere: Ignored for absorption sweeps; the grid sets k directly"
                )
            self._validate_atmosphere(experiment["atmosphere"], "experiment.atmosphere")
        elif variable in ("frequency", "antennas"):
            self.errors.append(f"experiment: 'atmosphere' is required for {variable} sweeps")

        self._validate_geometry(experiment.get("geometry", {}), "experiment.geometry")
        self._validate_budget(experiment.get("budget", {}), "experiment.budget")

        angles = experiment.get("angles", "fixed")
        if angles not in VALID_ANGLES:
            self.errors.append(
                f"experiment.angles: Invalid value '{angles}'. Valid options: {', '.join(VALID_ANGLES)}"
            )

    def _validate_grid(self, grid: Any, variable: Any, path: str):
        if isinstance(grid, list):
            if not grid:
                self.errors.append(f"{path}: Must not be empty")
                return
            if not all(_is_number(value) for value in grid):
                self.errors.append(f"{path}: All values must be numbers")
                return
            if any(b <= a for a, b in zip(grid, grid[1:])):
                self.errors.append(f"{path}: Values must be strictly increasing")
            values = grid
        elif isinstance(grid, dict):
            self._warn_unknown_keys(grid, ["start", "stop", "step", "points_per_decade"], path)
            for field in ["start", "stop"]:
                if field not in grid:
                    self.errors.append(f"{path}: Missing required field '{field}'")
                elif not _is_number(grid[field]):
                    self.errors.append(f"{path}.{field}: Must be a number")
            if ("step" in grid) == ("points_per_decade" in grid):
                self.errors.append(f"{path}: Specify exactly one of 'step' (linear) or 'points_per_decade' (log)")
                return
            if not all(_is_number(grid.get(field)) for field in ["start", "stop"]):
                return
            start, stop = grid["start"], grid["stop"]
            if stop < start:
                self.errors.append(f"{path}: 'stop' ({stop}) must be >= 'start' ({start})")
            if "step" in grid and (not _is_number(grid["step"]) or grid["step"] <= 0):
                self.errors.append(f"{path}.step: Must be a number > 0")
            if "points_per_decade" in grid:
                if not _is_integer(grid["points_per_decade"]) or grid["points_per_decade"] < 1:
                    self.errors.append(f"{path}.points_per_decade: Must be a positive integer")
                if start <= 0:
                    self.errors.append(f"{path}.start: Log grids need start > 0")
            values = [start, stop]
        else:
            self.errors.append(f"{path}: Must be a list of values or a {{start, stop, step}} mapping")
            return

        if variable == "frequency" and any(value <= 0 for value in values):
            self.errors.append(f"{path}: Frequencies must be > 0 Hz")
        elif variable == "absorption" and any(value < 0 for value in values):
            self.errors.append(f"{path}: Absorption coefficients must be >= 0")
        elif variable == "antennas" and any(value < 1 or int(value) != value for value in values):
            self.errors.append(f"{path}: Antenna counts must be positive integers")

    def _validate_atmosphere(self, atmosphere: Any, path: str):
        if not isinstance(atmosphere, dict):
            self.errors.append(f"{path}: Must be a dictionary")
            return

        sources = [key for key in ATMOSPHERE_SOURCES if key in atmosphere]
        if len(sources) != 1:
            self.errors.append(f"{path}: Specify exactly one of {', '.join(ATMOSPHERE_SOURCES)}")
        self._warn_unknown_keys(atmosphere, ATMOSPHERE_SOURCES, path)

        if "k_per_m" in atmosphere:
            k = atmosphere["k_per_m"]
            if not _is_number(k) or k < 0:
                self.errors.append(f"{path}.k_per_m: Must be a number >= 0, got '{k}'")

        if "preset" in atmosphere:
            names = [preset.name for preset in builtin_presets()]
            if not isinstance(atmosphere["preset"], str) or atmosphere["preset"].lower() not in [
                n.lower() for n in names
            ]:
                self.errors.append(
                    f"{path}.preset: Unknown preset '{atmosphere['preset']}'. Valid presets: {'; '.join(names)}"
                )

        if "mixture" in atmosphere:
            mixture = atmosphere["mixture"]
            if not isinstance(mixture, dict) or not mixture:
                self.errors.append(f"{path}.mixture: Must be a non-empty mapping of species to mole fraction")
            else:
                for species, fraction in mixture.items():
                    if not _is_number(fraction) or not 0 <= fraction <= 1:
                        self.errors.append(f"{path}.mixture.{species}: Mole fraction must be in [0, 1]")
                total = sum(f for f in mixture.values() if _is_number(f))
                if total > 1.0 + 1e-6:
                    self.errors.append(f"{path}.mixture: Mole fractions sum to {total}, above 1")

        if "mixture_file" in atmosphere and not isinstance(atmosphere["mixture_file"], str):
            self.errors.append(f"{path}.mixture_file: Must be a file path")

    def _validate_geometry(self, geometry: Any, path: str):
        if not isinstance(geometry, dict):
            self.errors.append(f"{path}: Must be a dictionary")
            return

        self._warn_unknown_keys(geometry, ["n", "spacing_wavelengths", "phi_deg", "theta_deg", "distance_m"], path)

        if "n" in geometry and (not _is_integer(geometry["n"]) or geometry["n"] < 1):
            self.errors.append(f"{path}.n: Must be a positive integer, got '{geometry['n']}'")
        for field in ["spacing_wavelengths", "distance_m"]:
            if field in geometry and (not _is_number(geometry[field]) or geometry[field] <= 0):
                self.errors.append(f"{path}.{field}: Must be a number > 0, got '{geometry[field]}'")
        for field in ["phi_deg", "theta_deg"]:
            if field in geometry and not _is_number(geometry[field]):
                self.errors.append(f"{path}.{field}: Must be a number")

    def _validate_budget(self, budget: Any, path: str):
        if not isinstance(budget, dict):
            self.errors.append(f"{path}: Must be a dictionary")
            return

        mode = budget.get("mode", "constant_snr")
        if mode not in VALID_BUDGET_MODES:
            self.errors.append(f"{path}.mode: Invalid value '{mode}'. Valid options: {', '.join(VALID_BUDGET_MODES)}")
            return

        if mode == "constant_snr":
            self._warn_unknown_keys(budget, ["mode", "snr_db"], path)
            if "snr_db" in budget and not _is_number(budget["snr_db"]):
                self.errors.append(f"{path}.snr_db: Must be a number")
        else:
            self._warn_unknown_keys(budget, ["mode", "power_w", "noise_dbm"], path)
            if "power_w" in budget and (not _is_number(budget["power_w"]) or budget["power_w"] <= 0):
                self.errors.append(f"{path}.power_w: Must be a number > 0")
            if "noise_dbm" in budget and not _is_number(budget["noise_dbm"]):
                self.errors.append(f"{path}.noise_dbm: Must be a number")

    def _validate_data_paths(self, config: Dict[str, Any]):
        data_paths = config.get("data_paths", [])
        if not isinstance(data_paths, list):
            self.errors.append("'data_paths' must be a list")
            return

        for idx, entry in enumerate(data_paths):
            path = f"data_paths[{idx}]"
            if isinstance(entry, str):
                continue
            if not isinstance(entry, dict) or "path" not in entry:
                self.errors.append(f"{path}: Must be a file path or a mapping with a 'path' field")
                continue
            self._warn_unknown_keys(entry, ["path", "species", "temperature_k", "pressure_atm"], path)
            for field in ["temperature_k", "pressure_atm"]:
                if field in entry and (not _is_number(entry[field]) or entry[field] <= 0):
                    self.errors.append(f"{path}.{field}: Must be a number > 0")

    def _validate_plan(self, config: Dict[str, Any]):
        if "trials" in config:
            trials = config["trials"]
            if not _is_integer(trials) or trials < 1:
                self.errors.append(f"trials: Must be a positive integer, got '{trials}'")
            elif trials < 100:
                self.warnings.append(f"trials: Only {trials} trial(s); confidence intervals will be coarse")

        if "seed" in config:
            seed = config["seed"]
            if not _is_integer(seed) or not 0 <= seed < 2**64:
                self.errors.append(f"seed: Must be an integer in [0, 2^64), got '{seed}'")

        if "percentiles" in config:
            percentiles = config["percentiles"]
            if (
                not isinstance(percentiles, list)
                or len(percentiles) != 2
                or not all(_is_number(p) for p in percentiles)
            ):
                self.errors.append("percentiles: Must be a [low, high] pair of numbers")
            elif not 0 <= percentiles[0] < percentiles[1] <= 1:
                self.errors.append(f"percentiles: Must satisfy 0 <= low < high <= 1, got {percentiles}")

    def _validate_output(self, config: Dict[str, Any]):
        if "output_path" in config and not isinstance(config["output_path"], str):
            self.errors.append("output_path: Must be a file path")

        output_format = config.get("output_format", "csv")
        if output_format not in VALID_OUTPUT_FORMATS:
            self.errors.append(
                f"output_format: Invalid value '{output_format}'. Valid options: {', '.join(VALID_OUTPUT_FORMATS)}"
            )
