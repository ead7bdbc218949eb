"""
Result Export
CSV and YAML writers for sweep results, spectra, the bandwidth table and run manifests
"""

import csv
import logging
from pathlib import Path
from typing import Iterable, List, Sequence, Union

import yaml

from app.models.experiment import RmseReport, RunManifest
from app.utils.subspace import MusicSpectrum

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

BANDWIDTH_TABLE_FIELDS = ["n", "fc_thz", "tp_ps", "fl_thz", "fh_thz", "b3db_thz", "flag"]


def _write_rows(path: PathLike, fieldnames: List[str], rows: Iterable[dict]) -> Path:
    # floats go through str(), the shortest round-tripping form, so reruns are byte-identical
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    logger.info(f"Wrote {path}")
    return path


def _two_dimensional(reports: Sequence[RmseReport]) -> bool:
    return any(r.secondary_value is not None for r in reports)


def write_rmse_csv(reports: Sequence[RmseReport], path: PathLike) -> Path:
    """
    One row per sweep point

    Header `sweep_value,rmse_deg,stderr_deg,n_run,seed`; two-dimensional
    sweeps add `secondary_value` after `sweep_value`.
    """
    fields = ["sweep_value", "rmse_deg", "stderr_deg", "n_run", "seed"]
    if _two_dimensional(reports):
        fields.insert(1, "secondary_value")
    rows = []
    for report in reports:
        row = {
            "sweep_value": float(report.sweep_value),
            "rmse_deg": float(report.rmse_deg),
            "stderr_deg": float(report.stderr_deg),
            "n_run": report.n_run,
            "seed": report.seed,
        }
        if "secondary_value" in fields:
            row["secondary_value"] = float(report.secondary_value)
        rows.append(row)
    return _write_rows(path, fields, rows)


def write_runs_csv(reports: Sequence[RmseReport], path: PathLike) -> Path:
    """Long-format per-run estimates, `sweep_value,run_index,estimate_deg`"""
    fields = ["sweep_value", "run_index", "estimate_deg"]
    if _two_dimensional(reports):
        fields.insert(1, "secondary_value")
    rows = []
    for report in reports:
        for index, estimate in enumerate(report.estimates):
            row = {"sweep_value": float(report.sweep_value), "run_index": index, "estimate_deg": float(estimate)}
            if "secondary_value" in fields:
                row["secondary_value"] = float(report.secondary_value)
            rows.append(row)
    return _write_rows(path, fields, rows)


def write_spectrum_csv(spectrum: MusicSpectrum, path: PathLike) -> Path:
    rows = ({"theta_deg": float(theta), "value": float(value)} for theta, value in spectrum.rows())
    return _write_rows(path, ["theta_deg", "value"], rows)


def write_bandwidth_table_csv(rows: Sequence[dict], path: PathLike) -> Path:
    cleaned = [{**row, "flag": row["flag"] or ""} for row in rows]
    return _write_rows(path, BANDWIDTH_TABLE_FIELDS, cleaned)


def write_manifest(manifest: RunManifest, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as f:
        yaml.safe_dump(manifest.to_dict(), f, sort_keys=False, default_flow_style=False)
    logger.info(f"Wrote {path}")
    return path
