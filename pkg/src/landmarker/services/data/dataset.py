"""Torch dataset serving resized, optionally augmented samples with heatmap targets."""

import logging
from typing import Any

import torch
from torch.utils.data import Dataset

from src.landmarker.services.data.imaging import load_image, read_points_csv
from src.landmarker.services.data.schemas import (
    AugmentConfig,
    DatasetManifest,
    DatasetSplit,
    DomainSpec,
    ImageRecord,
    Sample,
)
from src.landmarker.services.data.transforms import augment, resize_with_landmarks
from src.landmarker.services.heatmap.codec import encode_heatmap
from src.landmarker.services.heatmap.schemas import CoordinateSpace, LandmarkSet
from src.landmarker.services.seeding import make_rng

logger = logging.getLogger(__name__)


def load_sample(record: ImageRecord, domain: DomainSpec) -> Sample:
    """Read one record from disk and resize it to the domain's training size."""
    image = load_image(record.image)
    landmarks = LandmarkSet.from_array(
        read_points_csv(record.landmarks),
        domain_id=domain.domain_id,
        image_id=record.image_id,
        space=CoordinateSpace.NATIVE,
    )
    return resize_with_landmarks(image, landmarks, domain.resize_to)


class LandmarkDataset(Dataset[dict[str, Any]]):
    """
    One domain's split as a map-style dataset.

    Items are dicts with ``image`` [C, H, W], ``target`` [C', H, W],
    ``landmarks`` [C', 2] (resized space), ``domain_index`` and ``index``.
    Augmentation randomness is a pure function of (seed, epoch, domain, index),
    so results do not depend on how items are spread over loader workers.
    """

    def __init__(
        self,
        manifest: DatasetManifest,
        split: DatasetSplit,
        *,
        domain_index: int,
        sigma: float,
        peak_normalized: bool = False,
        augment_config: AugmentConfig | None = None,
        seed: int = 0,
        cache: bool = True,
    ):
        self.domain = manifest.domain
        self.split = split
        self.records = manifest.records(split)
        self.domain_index = domain_index
        self.sigma = sigma
        self.peak_normalized = peak_normalized
        self.augment_config = augment_config
        self.seed = seed
        self.epoch = 0
        self._cache: dict[int, Sample] | None = {} if cache else None
        logger.debug(
            f"Dataset for domain '{self.domain.domain_id}'",
            extra={"split": split.value, "images": len(self.records), "augment": augment_config is not None},
        )

    def __len__(self) -> int:
        return len(self.records)

    def set_epoch(self, epoch: int) -> None:
        """Select the augmentation stream for an epoch."""
        self.epoch = epoch

    def sample(self, index: int) -> Sample:
        """Resized sample without augmentation."""
        if self._cache is not None and index in self._cache:
            return self._cache[index]
        sample = load_sample(self.records[index], self.domain)
        if self._cache is not None:
            self._cache[index] = sample
        return sample

    def __getitem__(self, index: int) -> dict[str, Any]:
        sample = self.sample(index)
        if self.augment_config is not None:
            rng = make_rng(self.seed, "augment", self.epoch, self.domain_index, index)
            sample = augment(sample, rng, self.augment_config)

        height, width = self.domain.resize_to
        heatmap = encode_heatmap(
            sample.landmarks,
            height,
            width,
            self.sigma,
            expected_count=self.domain.num_landmarks,
            peak_normalized=self.peak_normalized,
        )
        return {
            "image": torch.from_numpy(sample.image),
            "target": torch.from_numpy(heatmap.values).to(torch.float32),
            "landmarks": torch.from_numpy(sample.landmarks.as_array()),
            "domain_index": self.domain_index,
            "index": index,
        }
