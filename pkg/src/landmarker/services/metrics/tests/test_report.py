"""Tests for report output."""

import csv

from src.landmarker.services.metrics.errors import summarize
from src.landmarker.services.metrics.evaluate import OraclePredictor, evaluate_domains
from src.landmarker.services.metrics.report import format_table, write_per_landmark_csv, write_report
from src.landmarker.services.metrics.schemas import MetricsReport, MetricUnit


class TestFormatTable:
    """Test the plain-text table."""

    def test_rows_and_sdr_cells(self):
        """Test one row per domain plus the aggregate, SDR labelled with its unit."""
        head = summarize([[1.0, 3.0]], [2.0, 2.5], domain_id="head", unit=MetricUnit.MM, n_images=1)
        pooled = summarize([[1.0, 3.0]], [2.0], domain_id="all", n_images=1)

        lines = format_table(MetricsReport(domains=[head], aggregate=pooled)).splitlines()

        assert lines[0].split() == ["domain", "unit", "space", "images", "MRE±STD", "SDR(%)"]
        assert lines[1].startswith("head")
        assert "2.00±1.00" in lines[1]
        assert "2mm:  50.00" in lines[1]
        assert "2.5mm:  50.00" in lines[1]
        assert lines[2].startswith("all")
        assert "2px:  50.00" in lines[2]


class TestWriteReport:
    """Test report files."""

    def test_json_round_trip(self, synth_manifests, tmp_path):
        """Test report.json parses back to the same report."""
        report, _ = evaluate_domains(OraclePredictor(), synth_manifests, sigma=3.0)

        json_path, table_path = write_report(tmp_path / "eval", report)

        assert MetricsReport.model_validate_json(json_path.read_text()) == report
        assert table_path.read_text() == format_table(report)

    def test_per_landmark_csv(self, synth_manifests, tmp_path):
        """Test one row per domain, image and landmark."""
        _, evaluations = evaluate_domains(OraclePredictor(), synth_manifests, sigma=3.0)

        path = write_per_landmark_csv(tmp_path / "per_landmark.csv", evaluations)

        with path.open(newline="") as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == 2 * 3 + 2 * 5
        assert {row["domain"] for row in rows} == {"synth0", "synth1"}
        assert all(float(row["error"]) == 0.0 for row in rows)
