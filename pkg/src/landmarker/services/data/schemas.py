"""Pydantic models for dataset descriptions and loaded samples."""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Annotated, Literal

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from src.landmarker.services.heatmap.schemas import LandmarkSet


class SpacingKind(str, Enum):
    """How pixel distances become physical distances for a domain."""

    UNIFORM = "uniform"
    WRIST_CALIBRATED = "wrist_calibrated"
    PIXEL_ONLY = "pixel_only"


class UniformSpacing(BaseModel):
    """Every native pixel has the same physical size."""

    kind: Literal["uniform"] = "uniform"
    mm_per_px: float = Field(gt=0)


class WristCalibratedSpacing(BaseModel):
    """Scale derived per image from two ground-truth landmarks a known width apart."""

    kind: Literal["wrist_calibrated"] = "wrist_calibrated"
    width_mm: float = Field(default=50.0, gt=0)
    index_a: int = Field(ge=0)
    index_b: int = Field(ge=0)

    @model_validator(mode="after")
    def _distinct_endpoints(self) -> "WristCalibratedSpacing":
        if self.index_a == self.index_b:
            raise ValueError("wrist calibration endpoints must be distinct landmarks")
        return self


class PixelOnlySpacing(BaseModel):
    """No physical calibration; distances are reported in native pixels."""

    kind: Literal["pixel_only"] = "pixel_only"


Spacing = Annotated[
    UniformSpacing | WristCalibratedSpacing | PixelOnlySpacing, Field(discriminator="kind")
]

DEFAULT_SDR_THRESHOLDS: dict[SpacingKind, list[float]] = {
    SpacingKind.UNIFORM: [2.0, 2.5, 3.0, 4.0],
    SpacingKind.WRIST_CALIBRATED: [2.0, 4.0, 10.0],
    SpacingKind.PIXEL_ONLY: [3.0, 6.0, 9.0],
}


class DomainSpec(BaseModel):
    """Static description of one dataset / anatomical region."""

    domain_id: str = Field(pattern=r"^[A-Za-z][A-Za-z0-9_]*$")
    name: str = ""
    num_landmarks: int = Field(ge=1)
    in_channels: int = Field(default=1, ge=1)
    resize_to: tuple[int, int]  # (H, W)
    spacing: Spacing = Field(default_factory=PixelOnlySpacing)
    split: tuple[int, int]  # (train_count, test_count) in manifest order
    sdr_thresholds: list[float] | None = None

    @field_validator("resize_to")
    @classmethod
    def _resize_divisible(cls, value: tuple[int, int]) -> tuple[int, int]:
        height, width = value
        if height <= 0 or width <= 0:
            raise ValueError(f"resize_to must be positive, got {value}")
        if height % 4 or width % 4:
            raise ValueError(f"resize_to {value} must be divisible by 4")
        return value

    @field_validator("split")
    @classmethod
    def _split_non_negative(cls, value: tuple[int, int]) -> tuple[int, int]:
        if value[0] < 1 or value[1] < 0:
            raise ValueError(f"split needs >=1 training and >=0 test images, got {value}")
        return value

    @model_validator(mode="after")
    def _wrist_indices_valid(self) -> "DomainSpec":
        if isinstance(self.spacing, WristCalibratedSpacing):
            for index in (self.spacing.index_a, self.spacing.index_b):
                if index >= self.num_landmarks:
                    raise ValueError(
                        f"wrist calibration index {index} out of range for "
                        f"{self.num_landmarks} landmarks"
                    )
        return self

    @property
    def thresholds(self) -> list[float]:
        """SDR thresholds for reports, falling back to the spacing rule's defaults."""
        if self.sdr_thresholds:
            return sorted(self.sdr_thresholds)
        return list(DEFAULT_SDR_THRESHOLDS[SpacingKind(self.spacing.kind)])

    @property
    def unit(self) -> str:
        return "px" if self.spacing.kind == SpacingKind.PIXEL_ONLY else "mm"


class ImageRecord(BaseModel):
    """One annotated image listed in a manifest."""

    image_id: str
    image: Path
    landmarks: Path


class DatasetSplit(str, Enum):
    """Partition of a domain's records."""

    TRAIN = "train"
    VAL = "val"
    TEST = "test"


class ManifestDocument(BaseModel):
    """On-disk ``manifest.json`` layout: DomainSpec fields plus a records list."""

    domain: DomainSpec
    records: list[ImageRecord] = Field(min_length=1)


class DatasetManifest(BaseModel):
    """A loaded, validated manifest with deterministic splits."""

    root: Path
    domain: DomainSpec
    train: list[ImageRecord]
    val: list[ImageRecord]
    test: list[ImageRecord]

    def records(self, split: DatasetSplit) -> list[ImageRecord]:
        return {
            DatasetSplit.TRAIN: self.train,
            DatasetSplit.VAL: self.val,
            DatasetSplit.TEST: self.test,
        }[split]


@dataclass(frozen=True)
class ResizeTransform:
    """Axis-aligned scaling between a native image grid and its resized grid."""

    native_size: tuple[int, int]  # (H0, W0)
    resized_size: tuple[int, int]  # (H, W)

    @property
    def scale(self) -> tuple[float, float]:
        """Per-axis factors (sx, sy) from native to resized pixels."""
        return (
            self.resized_size[1] / self.native_size[1],
            self.resized_size[0] / self.native_size[0],
        )

    def to_resized(self, points: np.ndarray) -> np.ndarray:
        sx, sy = self.scale
        return np.asarray(points, dtype=np.float64) * np.array([sx, sy])

    def to_native(self, points: np.ndarray) -> np.ndarray:
        sx, sy = self.scale
        return np.asarray(points, dtype=np.float64) / np.array([sx, sy])


@dataclass
class Sample:
    """An image resized for training together with its landmarks."""

    image: np.ndarray  # [C, H, W] float32 in [0, 1]
    landmarks: LandmarkSet  # resized space
    native_size: tuple[int, int]
    domain_id: str
    transform: ResizeTransform
    native_landmarks: LandmarkSet | None = None
    metadata: dict[str, object] = field(default_factory=dict)


class AugmentConfig(BaseModel):
    """Training-time geometric augmentation."""

    rotate_prob: float = Field(default=0.1, ge=0.0, le=1.0)
    rotate_degrees: float = Field(default=2.0, ge=0.0)
    translate_prob: float = Field(default=0.1, ge=0.0, le=1.0)
    translate_px: int = Field(default=10, ge=0)
    max_attempts: int = Field(default=10, ge=1)


class SynthConfig(BaseModel):
    """Parameters of a generated toy corpus."""

    num_domains: int = Field(default=2, ge=1)
    images_per_domain: int = Field(default=8, ge=2)
    landmarks_per_domain: list[int] = Field(default_factory=lambda: [3, 5])
    size: int = Field(default=64, ge=32)
    seed: int = 0
    test_count: int = Field(default=2, ge=0)

    @field_validator("size")
    @classmethod
    def _size_multiple_of_eight(cls, value: int) -> int:
        if value % 8:
            raise ValueError(f"size must be a multiple of 8, got {value}")
        return value

    @model_validator(mode="after")
    def _shapes_consistent(self) -> "SynthConfig":
        if len(self.landmarks_per_domain) == 1 and self.num_domains > 1:
            self.landmarks_per_domain = self.landmarks_per_domain * self.num_domains
        if len(self.landmarks_per_domain) != self.num_domains:
            raise ValueError(
                f"landmarks_per_domain has {len(self.landmarks_per_domain)} entries "
                f"for {self.num_domains} domains"
            )
        if any(count < 1 for count in self.landmarks_per_domain):
            raise ValueError("every domain needs at least one landmark")
        if self.test_count >= self.images_per_domain:
            raise ValueError(
                f"test_count {self.test_count} leaves no training images out of "
                f"{self.images_per_domain}"
            )
        return self
