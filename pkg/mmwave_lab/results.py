"""
Result tables: one row per sweep value, CSV or JSON lines.

Floats are written in shortest round-trip form so that a result file read
back reproduces the in-memory values exactly.
"""

import json
import os
import tempfile
from typing import Any, Dict, Iterable, List, Optional

import pandas as pd

from .errors import ConfigError
from .experiments import SweepRow
from .mimo import PowerBudget

RESULT_COLUMNS = [
    "sweep_value",
    "mean_capacity_bps_hz",
    "ci_low",
    "ci_high",
    "mean_inv_condition",
    "siso_mean_bps_hz",
    "k_per_m",
    "snr_db_or_power_mode",
    "ensemble_capacity_bps_hz",
    "ensemble_inv_condition",
]
TEXT_COLUMNS = {"snr_db_or_power_mode"}
OUTPUT_FORMATS = ("csv", "json")


def row_to_record(row: SweepRow, budget: PowerBudget) -> Dict[str, Any]:
    stats = row.stats
    return {
        "sweep_value": float(row.value),
        "mean_capacity_bps_hz": stats.mean,
        "ci_low": stats.ci_low,
        "ci_high": stats.ci_high,
        "mean_inv_condition": stats.mean_inverse_condition,
        "siso_mean_bps_hz": stats.siso_mean,
        "k_per_m": float(row.absorption),
        "snr_db_or_power_mode": budget.describe(),
        "ensemble_capacity_bps_hz": stats.ensemble_capacity,
        "ensemble_inv_condition": stats.ensemble_inverse_condition,
    }


def results_frame(records: Iterable[Dict[str, Any]]) -> pd.DataFrame:
    frame = pd.DataFrame(list(records), columns=RESULT_COLUMNS)
    numeric = [column for column in RESULT_COLUMNS if column not in TEXT_COLUMNS]
    frame[numeric] = frame[numeric].astype("float64")
    return frame


def render_results(records: Iterable[Dict[str, Any]], output_format: str = "csv") -> str:
    if output_format not in OUTPUT_FORMATS:
        raise ConfigError(f"Unknown output format '{output_format}'", field="output_format")

    frame = results_frame(records)
    if output_format == "json":
        # to_json caps at 15 significant digits; json.dumps keeps repr floats
        return "".join(json.dumps(record) + "\n" for record in frame.to_dict(orient="records"))
    return frame.to_csv(index=False, lineterminator="\n")


def write_results(
    rows: Iterable[SweepRow], budget: PowerBudget, output_path: str, output_format: str = "csv"
) -> str:
    """
    Write the table atomically: a temp file in the target directory is
    renamed over output_path only once it is complete.
    """
    text = render_results([row_to_record(row, budget) for row in rows], output_format)
    directory = os.path.dirname(os.path.abspath(output_path))
    os.makedirs(directory, exist_ok=True)

    fd, tmp_path = tempfile.mkstemp(prefix=".tmp-", suffix=".part", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp_path, output_path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    return output_path


def read_results(path: str, output_format: Optional[str] = None) -> List[Dict[str, Any]]:
    """Read a result file back into records; the format defaults to the extension."""
    if output_format is None:
        output_format = "json" if path.endswith((".json", ".jsonl")) else "csv"

    if output_format == "json":
        with open(path, "r", encoding="utf-8") as f:
            return [json.loads(line) for line in f if line.strip()]

    try:
        frame = pd.read_csv(path, float_precision="round_trip", dtype={column: str for column in TEXT_COLUMNS})
    except pd.errors.EmptyDataError:
        raise ConfigError(f"{path}: empty result file")
    if list(frame.columns) != RESULT_COLUMNS:
        raise ConfigError(f"{path}: unexpected header {list(frame.columns)}")
    try:
        frame = results_frame(frame.to_dict(orient="records"))
    except ValueError as e:
        raise ConfigError(f"{path}: non-numeric result value ({e})")
    return frame.to_dict(orient="records")
