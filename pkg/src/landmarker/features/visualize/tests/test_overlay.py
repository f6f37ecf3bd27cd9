"""Tests for overlay rendering and the visualize subcommand."""

import numpy as np
import pytest
from PIL import Image

from src.landmarker.exceptions import ContractViolation
from src.landmarker.features.visualize.overlay import PREDICTED_COLOR, TRUTH_COLOR, render_overlay
from src.landmarker.main import main
from src.landmarker.services.data.imaging import save_image, write_points_csv

POINTS = np.array([[10.0, 10.0], [20.0, 40.0], [30.0, 15.0], [45.0, 50.0], [50.0, 25.0], [12.0, 55.0]])


class TestRenderOverlay:
    """Test drawn markers and the MRE label."""

    def test_identical_sets(self):
        """Test the same six points as prediction and truth give 12 markers and MRE 0."""
        overlay = render_overlay(np.zeros((1, 64, 64)), POINTS, POINTS)

        assert overlay.markers == 12
        assert overlay.mre == 0.0
        assert overlay.image.mode == "RGB"

    def test_colors(self):
        """Test predictions are red and ground truth green."""
        truth = np.array([[40.0, 40.0]])
        predicted = np.array([[15.0, 15.0]])

        overlay = render_overlay(np.zeros((1, 64, 64)), predicted, truth)

        pixels = np.asarray(overlay.image).reshape(-1, 3)
        colors = {tuple(int(c) for c in p) for p in pixels}
        assert PREDICTED_COLOR in colors
        assert TRUTH_COLOR in colors
        assert overlay.mre == pytest.approx(np.hypot(25.0, 25.0))

    def test_without_truth(self):
        """Test predictions alone carry no MRE."""
        overlay = render_overlay(np.zeros((1, 64, 64)), POINTS)

        assert overlay.markers == 6
        assert overlay.mre is None

    def test_count_mismatch(self):
        """Test prediction and truth counts must agree."""
        with pytest.raises(ContractViolation):
            render_overlay(np.zeros((1, 64, 64)), POINTS, POINTS[:3])


def test_visualize_command(tmp_path, capsys):
    """The subcommand writes a PNG of the input size and reports the MRE."""
    save_image(tmp_path / "image.png", np.full((64, 48), 0.3))
    write_points_csv(tmp_path / "pred.csv", POINTS * [0.7, 1.0], with_index=True)
    write_points_csv(tmp_path / "truth.csv", POINTS * [0.7, 1.0])
    out = tmp_path / "overlay.png"

    code = main(
        [
            "visualize",
            "--image",
            str(tmp_path / "image.png"),
            "--pred",
            str(tmp_path / "pred.csv"),
            "--truth",
            str(tmp_path / "truth.csv"),
            "--out",
            str(out),
        ]
    )

    assert code == 0
    printed = capsys.readouterr().out
    assert "12 markers" in printed
    assert "MRE 0.00 px" in printed
    with Image.open(out) as image:
        assert image.size == (48, 64)
