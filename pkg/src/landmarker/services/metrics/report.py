"""Report output: JSON document, aligned text table and per-landmark CSV."""

import csv
from collections.abc import Sequence
from pathlib import Path

from src.landmarker.services.metrics.evaluate import DomainEvaluation
from src.landmarker.services.metrics.schemas import DomainMetrics, MetricsReport

REPORT_JSON = "report.json"
REPORT_TABLE = "report.txt"
PER_LANDMARK_CSV = "per_landmark.csv"


def _threshold_label(threshold: float, unit: str) -> str:
    return f"{threshold:g}{unit}"


def _row(metrics: DomainMetrics) -> list[str]:
    sdr = "  ".join(
        f"{_threshold_label(t, metrics.unit.value)}: {rate:6.2f}" for t, rate in metrics.sdr.items()
    )
    return [
        metrics.domain_id,
        metrics.unit.value,
        metrics.space.value,
        str(metrics.n_images),
        f"{metrics.mre:.2f}±{metrics.std:.2f}",
        sdr,
    ]


def format_table(report: MetricsReport) -> str:
    """
    Render the report as a plain-text table, one row per domain and the aggregate last.

    Example:
        domain  unit  space    images  MRE±STD    SDR(%)
        head    mm    native   250     1.54±2.37  2mm:  77.79  2.5mm:  84.12 ...
    """
    header = ["domain", "unit", "space", "images", "MRE±STD", "SDR(%)"]
    rows = [_row(m) for m in report.domains]
    if report.aggregate is not None:
        rows.append(_row(report.aggregate))

    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header) - 1)]
    lines = []
    for cells in [header, *rows]:
        padded = [cell.ljust(width) for cell, width in zip(cells[:-1], widths, strict=True)]
        lines.append("  ".join([*padded, cells[-1]]).rstrip())
    return "\n".join(lines) + "\n"


def write_report(out_dir: Path, report: MetricsReport) -> tuple[Path, Path]:
    """Write ``report.json`` and ``report.txt``; returns both paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / REPORT_JSON
    table_path = out_dir / REPORT_TABLE
    json_path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    table_path.write_text(format_table(report), encoding="utf-8")
    return json_path, table_path


def write_per_landmark_csv(path: Path, evaluations: Sequence[DomainEvaluation]) -> Path:
    """One row per (domain, image, landmark) with native coordinates and the error."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["domain", "image_id", "landmark", "pred_x", "pred_y", "true_x", "true_y", "error", "unit"]
        )
        for evaluation in evaluations:
            unit = evaluation.metrics.unit.value
            for row, image_id in enumerate(evaluation.image_ids):
                for landmark, error in enumerate(evaluation.errors[row]):
                    px, py = evaluation.predicted_native[row, landmark]
                    tx, ty = evaluation.truth_native[row, landmark]
                    writer.writerow(
                        [
                            evaluation.domain.domain_id,
                            image_id,
                            landmark,
                            f"{px:.6g}",
                            f"{py:.6g}",
                            f"{tx:.6g}",
                            f"{ty:.6g}",
                            f"{error:.6g}",
                            unit,
                        ]
                    )
    return path
