"""
Command-line front end.

    python main.py sweep configs/absorption_sweep.yaml
    python main.py point --n 2 --k 1.0 --snr-db 20
    python main.py presets
    python main.py validate configs/*.yaml

Exit codes: 0 success, 2 config/usage error, 3 data range or lookup error,
4 numerical failure.
"""

import argparse
import json
import logging
import math
import os
import sys
from typing import List, Optional

import yaml

from .absorption import Atmosphere, builtin_presets, find_preset, synthetic_spectra
from .config_loader import ConfigLoader, RunConfig, load_spectra
from .errors import (ConfigError, ConsistencyError, DomainError, FrequencyRangeError,
                     NumericalError, ShapeError, SpeciesLookupError)
from .experiments import AngleMode, DEFAULT_TRIALS, TrialPlan, resolve_points, run_point, sweep
from .geometry import LinkGeometry
from .mimo import DEFAULT_NOISE_DBM, PowerBudget
from .propagation import PathConditions, path_loss_db, sky_noise_psd
from .results import write_results

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4

LOG_LEVEL_ENV_VAR = "MMWAVE_LAB_LOG_LEVEL"

POINT_FIELDS = [
    "frequency_hz",
    "k_per_m",
    "n",
    "distance_m",
    "budget",
    "trials",
    "seed",
    "mean_capacity_bps_hz",
    "ci_low",
    "ci_high",
    "mean_inv_condition",
    "mean_singular_values",
    "siso_mean_bps_hz",
    "ensemble_capacity_bps_hz",
    "ensemble_inv_condition",
    "ensemble_singular_values",
    "siso_ensemble_bps_hz",
    "sky_noise_psd_w_per_hz",
    "path_loss_db",
]


def configure_logging(verbose: bool = False) -> None:
    level_name = "INFO" if verbose else os.environ.get(LOG_LEVEL_ENV_VAR, "WARNING").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _non_negative_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not a number")
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = _non_negative_float(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmwave-lab",
        description="mmWave MIMO capacity under molecular absorption and re-radiation",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress at INFO level")
    parser.add_argument(
        "--workers", type=int, default=None, help="worker threads (default: $MMWAVE_LAB_THREADS or CPU count)"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    sweep_parser = subparsers.add_parser("sweep", help="run the sweep described by a config file")
    sweep_parser.add_argument("config", help="YAML or JSON run config")

    point = subparsers.add_parser("point", help="evaluate one operating point and print JSON")
    point.add_argument("--n", type=_positive_int, default=3, help="elements per array (default 3)")
    point.add_argument("--f", type=_positive_float, default=60e9, help="carrier frequency in Hz (default 60e9)")
    point.add_argument("--d", type=_positive_float, default=50.0, help="center separation in m (default 50)")
    point.add_argument("--spacing", type=_positive_float, default=0.5, help="element spacing in wavelengths")
    point.add_argument("--phi-deg", type=float, default=90.0, help="transmit array orientation")
    point.add_argument("--theta-deg", type=float, default=90.0, help="receive array orientation")
    medium = point.add_mutually_exclusive_group()
    medium.add_argument("--k", type=_non_negative_float, help="absorption coefficient in Np/m")
    medium.add_argument("--preset", help="built-in gas mixture (see 'presets')")
    point.add_argument("--data", nargs="+", default=[], help="species spectrum CSVs for --preset")
    budget = point.add_mutually_exclusive_group()
    budget.add_argument("--snr-db", type=float, help="constant-SNR budget (default 20 dB)")
    budget.add_argument("--power-w", type=_positive_float, help="constant-power budget, transmit power in W")
    point.add_argument("--noise-dbm", type=float, default=DEFAULT_NOISE_DBM, help="noise power for --power-w")
    point.add_argument("--trials", type=_positive_int, default=DEFAULT_TRIALS)
    point.add_argument("--seed", type=int, default=0)
    point.add_argument("--random-angles", action="store_true", help="draw phi and theta per trial")

    subparsers.add_parser("presets", help="list the built-in gas mixtures")

    validate = subparsers.add_parser("validate", help="check config files and their data without running")
    validate.add_argument("configs", nargs="+")
    return parser


def cmd_sweep(config: RunConfig, workers: Optional[int] = None) -> int:
    rows = sweep(config.spec, config.plan, workers)
    write_results(rows, config.spec.budget, config.output_path, config.output_format)
    logging.info(f"Wrote {len(rows)} row(s) to {config.output_path}")
    return EXIT_OK


def _point_atmosphere(args) -> Atmosphere:
    if args.preset is None:
        return Atmosphere.constant(0.0 if args.k is None else args.k)
    if args.data:
        spectra = load_spectra(args.data)
    else:
        logging.warning(f"No --data given for preset '{args.preset}'; using the SYNTHETIC spectra")
        spectra = synthetic_spectra()
    return Atmosphere(mixture=find_preset(args.preset), spectra=spectra)


def cmd_point(args, out=None) -> int:
    out = out or sys.stdout
    if args.power_w is not None:
        budget = PowerBudget.constant_power(args.power_w, args.noise_dbm)
    else:
        budget = PowerBudget.constant_snr(20.0 if args.snr_db is None else args.snr_db)

    atmosphere = _point_atmosphere(args)
    atmosphere.check_covers([args.f])
    k = atmosphere.coefficient(args.f)
    geometry = LinkGeometry.symmetric(
        args.n,
        separation=args.d,
        spacing_wavelengths=args.spacing,
        phi=math.radians(args.phi_deg),
        theta=math.radians(args.theta_deg),
    )
    plan = TrialPlan(trials=args.trials, seed=args.seed)
    angles = AngleMode.RANDOM_PER_TRIAL if args.random_angles else AngleMode.FIXED
    stats = run_point(geometry, args.f, k, budget, plan, angles, args.workers)

    report = {
        "frequency_hz": args.f,
        "k_per_m": k,
        "n": args.n,
        "distance_m": args.d,
        "budget": budget.describe(),
        "trials": stats.trials,
        "seed": args.seed,
        "mean_capacity_bps_hz": stats.mean,
        "ci_low": stats.ci_low,
        "ci_high": stats.ci_high,
        "mean_inv_condition": stats.mean_inverse_condition,
        "mean_singular_values": stats.mean_singular_values,
        "siso_mean_bps_hz": stats.siso_mean,
        "ensemble_capacity_bps_hz": stats.ensemble_capacity,
        "ensemble_inv_condition": stats.ensemble_inverse_condition,
        "ensemble_singular_values": stats.ensemble_singular_values,
        "siso_ensemble_bps_hz": stats.siso_ensemble,
        "sky_noise_psd_w_per_hz": float(sky_noise_psd(args.f, k)),
        "path_loss_db": float(path_loss_db(PathConditions(args.f, args.d, k))),
    }
    out.write(json.dumps(report) + "\n")
    return EXIT_OK


def cmd_presets(out=None) -> int:
    out = out or sys.stdout
    presets = builtin_presets()
    out.write(f"{len(presets)} built-in gas mixtures (mole fractions):\n")
    for preset in presets:
        out.write(f"\n{preset.name}\n")
        for species, fraction in preset.components:
            out.write(f"  {species:<4} {fraction * 100:.6f} %  ({fraction!r})\n")
    return EXIT_OK


def cmd_validate(config_files: List[str], out=None) -> int:
    """Load and resolve each config (spectra, presets, grid coverage); run nothing."""
    out = out or sys.stdout
    loader = ConfigLoader()
    status = EXIT_OK
    for config_file in config_files:
        try:
            config = loader.load_run_config(config_file)
            points = resolve_points(config.spec)
            out.write(f"[VALID] {config_file}: {config.spec.variable.value} sweep, {len(points)} point(s)\n")
        except Exception as e:
            code = exit_code_for(e)
            if code is None:
                raise
            out.write(f"[INVALID] {config_file}: {e}\n")
            status = max(status, code)
    return status


def exit_code_for(error: BaseException) -> Optional[int]:
    if isinstance(error, (ConfigError, FileNotFoundError, yaml.YAMLError)):
        return EXIT_CONFIG
    if isinstance(error, (FrequencyRangeError, SpeciesLookupError, DomainError, ConsistencyError, ShapeError)):
        return EXIT_DATA
    if isinstance(error, NumericalError):
        return EXIT_NUMERICAL
    return None


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    try:
        if args.command == "sweep":
            config = ConfigLoader().load_run_config(args.config)
            logging.info(f"Loaded config {config.source}")
            return cmd_sweep(config, args.workers)
        if args.command == "point":
            return cmd_point(args)
        if args.command == "presets":
            return cmd_presets()
        return cmd_validate(args.configs)
    except Exception as e:
        code = exit_code_for(e)
        if code is None:
            raise
        logging.error(f"{type(e).__name__}: {e}")
        return code
