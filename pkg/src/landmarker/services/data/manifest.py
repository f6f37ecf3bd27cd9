"""Manifest loading and deterministic train/val/test splits.

A dataset directory holds a ``manifest.json``::

    {
      "domain": {"domain_id": "head", "num_landmarks": 19, "resize_to": [512, 416],
                 "spacing": {"kind": "uniform", "mm_per_px": 0.1}, "split": [150, 250]},
      "records": [{"image_id": "001", "image": "images/001.bmp", "landmarks": "landmarks/001.csv"}]
    }

Paths are relative to the manifest's directory. Records are ordered
lexicographically by ``image_id``; the first ``split[0]`` are training images
(the last 10% of those form the validation set) and the next ``split[1]`` are
test images.
"""

import logging
import math
from pathlib import Path

from pydantic import ValidationError

from src.landmarker.services.data.exceptions import ManifestError
from src.landmarker.services.data.imaging import read_points_csv
from src.landmarker.services.data.schemas import DatasetManifest, ImageRecord, ManifestDocument

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
VALIDATION_FRACTION = 0.1


def validation_count(train_count: int, fraction: float = VALIDATION_FRACTION) -> int:
    """Number of training records held out for checkpoint selection."""
    if train_count < 2:
        return 0
    return max(1, math.floor(train_count * fraction + 0.5))


def load_manifest(path: Path, *, check_landmarks: bool = True) -> DatasetManifest:
    """
    Load and validate a dataset manifest.

    Args:
        path: ``manifest.json`` file or the directory containing it
        check_landmarks: Read every landmark CSV and verify its row count

    Returns:
        DatasetManifest with absolute record paths and train/val/test partitions

    Raises:
        ManifestError: If the manifest is missing or invalid, files are missing
            (all missing ids are listed), a landmark file has the wrong number of
            rows, or the split asks for more records than exist
    """
    manifest_path = path / MANIFEST_NAME if path.is_dir() else path
    if not manifest_path.is_file():
        raise ManifestError(f"Manifest not found: {manifest_path}")

    try:
        document = ManifestDocument.model_validate_json(manifest_path.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise ManifestError(f"Invalid manifest {manifest_path}:\n{e}") from e
    except OSError as e:
        raise ManifestError(f"Cannot read manifest {manifest_path}: {e}") from e

    root = manifest_path.parent
    domain = document.domain
    records = sorted(
        (
            ImageRecord(
                image_id=r.image_id,
                image=(root / r.image).resolve(),
                landmarks=(root / r.landmarks).resolve(),
            )
            for r in document.records
        ),
        key=lambda r: r.image_id,
    )

    ids = [r.image_id for r in records]
    if len(set(ids)) != len(ids):
        raise ManifestError(f"{manifest_path}: duplicate image ids")

    missing = [r.image_id for r in records if not (r.image.is_file() and r.landmarks.is_file())]
    if missing:
        raise ManifestError(f"{manifest_path}: missing image/annotation files for ids {missing}")

    if check_landmarks:
        for record in records:
            count = len(read_points_csv(record.landmarks))
            if count != domain.num_landmarks:
                raise ManifestError(
                    f"{record.landmarks}: {count} landmarks, domain '{domain.domain_id}' "
                    f"declares {domain.num_landmarks}"
                )

    train_count, test_count = domain.split
    if train_count + test_count > len(records):
        raise ManifestError(
            f"{manifest_path}: split {domain.split} needs {train_count + test_count} records, "
            f"found {len(records)}"
        )

    training = records[:train_count]
    n_val = validation_count(train_count)
    manifest = DatasetManifest(
        root=root,
        domain=domain,
        train=training[: train_count - n_val],
        val=training[train_count - n_val :],
        test=records[train_count : train_count + test_count],
    )
    logger.info(
        f"Loaded manifest for domain '{domain.domain_id}'",
        extra={
            "manifest": str(manifest_path),
            "train": len(manifest.train),
            "val": len(manifest.val),
            "test": len(manifest.test),
        },
    )
    return manifest


def load_manifests(paths: list[Path], *, check_landmarks: bool = True) -> list[DatasetManifest]:
    """Load several manifests, rejecting two that declare the same domain id."""
    manifests = [load_manifest(path, check_landmarks=check_landmarks) for path in paths]
    ids = [m.domain.domain_id for m in manifests]
    duplicates = sorted({i for i in ids if ids.count(i) > 1})
    if duplicates:
        raise ManifestError(f"Domain ids declared by more than one manifest: {duplicates}")
    return manifests


def manifest_exists(path: Path) -> bool:
    """True if ``path`` is a manifest file or a directory containing one."""
    return (path / MANIFEST_NAME).is_file() if path.is_dir() else path.is_file()
