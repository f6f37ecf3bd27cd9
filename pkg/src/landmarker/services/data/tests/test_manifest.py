"""Tests for manifest loading and splits."""

import json
from pathlib import Path

import numpy as np
import pytest

from src.landmarker.services.data.exceptions import ManifestError
from src.landmarker.services.data.imaging import save_image, write_points_csv
from src.landmarker.services.data.manifest import (
    load_manifest,
    load_manifests,
    manifest_exists,
    validation_count,
)
from src.landmarker.services.data.schemas import DatasetSplit


def write_dataset(
    root: Path,
    *,
    domain_id: str = "head",
    count: int = 12,
    num_landmarks: int = 2,
    split: tuple[int, int] = (10, 2),
    skip_files: tuple[str, ...] = (),
) -> Path:
    """Write a small dataset with 8x8 images and return its directory."""
    root.mkdir(parents=True, exist_ok=True)
    records = []
    # Written in reverse so that loading has to sort.
    for index in reversed(range(count)):
        image_id = f"{index:03d}"
        records.append(
            {"image_id": image_id, "image": f"images/{image_id}.png", "landmarks": f"landmarks/{image_id}.csv"}
        )
        if image_id in skip_files:
            continue
        save_image(root / "images" / f"{image_id}.png", np.full((8, 8), 0.5))
        write_points_csv(root / "landmarks" / f"{image_id}.csv", np.tile([[1.0, 2.0]], (num_landmarks, 1)))
    document = {
        "domain": {"domain_id": domain_id, "num_landmarks": 2, "resize_to": [8, 8], "split": list(split)},
        "records": records,
    }
    (root / "manifest.json").write_text(json.dumps(document), encoding="utf-8")
    return root


class TestValidationCount:
    """Test the held-out share of training images."""

    @pytest.mark.parametrize(("train", "expected"), [(0, 0), (1, 0), (2, 1), (10, 1), (150, 15), (609, 61)])
    def test_ten_percent_rounded(self, train, expected):
        """Test 10% of the training split, at least one when two or more images."""
        assert validation_count(train) == expected


class TestLoadManifest:
    """Test manifest parsing and partitions."""

    def test_splits_in_id_order(self, tmp_path):
        """Test records are sorted and cut into train, val and test."""
        manifest = load_manifest(write_dataset(tmp_path / "head"))

        assert [r.image_id for r in manifest.train] == [f"{i:03d}" for i in range(9)]
        assert [r.image_id for r in manifest.val] == ["009"]
        assert [r.image_id for r in manifest.test] == ["010", "011"]
        assert manifest.records(DatasetSplit.VAL) == manifest.val
        assert manifest.train[0].image.is_absolute()

    def test_accepts_file_path(self, tmp_path):
        """Test the manifest file itself can be given."""
        root = write_dataset(tmp_path / "head")

        assert load_manifest(root / "manifest.json").domain.domain_id == "head"

    def test_deterministic(self, tmp_path):
        """Test loading twice gives the same partition."""
        root = write_dataset(tmp_path / "head")

        assert load_manifest(root) == load_manifest(root)

    def test_missing_manifest(self, tmp_path):
        """Test a directory without a manifest names the path."""
        with pytest.raises(ManifestError, match="Manifest not found"):
            load_manifest(tmp_path)

    def test_lists_all_missing_files(self, tmp_path):
        """Test every record with missing files is reported."""
        root = write_dataset(tmp_path / "head", skip_files=("003", "007"))

        with pytest.raises(ManifestError) as exc_info:
            load_manifest(root)

        assert "003" in str(exc_info.value)
        assert "007" in str(exc_info.value)

    def test_wrong_landmark_count(self, tmp_path):
        """Test a landmark file with the wrong row count is rejected."""
        root = write_dataset(tmp_path / "head", num_landmarks=3)

        with pytest.raises(ManifestError, match="3 landmarks"):
            load_manifest(root)

        assert load_manifest(root, check_landmarks=False).domain.num_landmarks == 2

    def test_split_larger_than_records(self, tmp_path):
        """Test a split asking for more records than exist."""
        root = write_dataset(tmp_path / "head", split=(10, 5))

        with pytest.raises(ManifestError, match="needs 15 records"):
            load_manifest(root)

    def test_invalid_document(self, tmp_path):
        """Test schema errors surface as ManifestError."""
        (tmp_path / "manifest.json").write_text('{"domain": {"domain_id": "head"}}', encoding="utf-8")

        with pytest.raises(ManifestError, match="Invalid manifest"):
            load_manifest(tmp_path)


class TestLoadManifests:
    """Test loading several domains."""

    def test_duplicate_domains(self, tmp_path):
        """Test two manifests cannot declare the same domain."""
        first = write_dataset(tmp_path / "a", domain_id="head")
        second = write_dataset(tmp_path / "b", domain_id="head")

        with pytest.raises(ManifestError, match="head"):
            load_manifests([first, second])

    def test_order_preserved(self, tmp_path):
        """Test manifests come back in the order given."""
        first = write_dataset(tmp_path / "a", domain_id="hand")
        second = write_dataset(tmp_path / "b", domain_id="head")

        assert [m.domain.domain_id for m in load_manifests([second, first])] == ["head", "hand"]

    def test_manifest_exists(self, tmp_path):
        """Test existence checks on directories and files."""
        root = write_dataset(tmp_path / "a")

        assert manifest_exists(root)
        assert manifest_exists(root / "manifest.json")
        assert not manifest_exists(tmp_path / "missing")
