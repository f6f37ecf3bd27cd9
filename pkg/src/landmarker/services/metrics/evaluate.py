"""
Per-domain evaluation: predict, decode, map back to native pixels, measure.

Errors for a domain's report are computed on the native pixel grid (predictions
go through the inverse resize) and then converted by the domain's spacing rule:

- uniform: native px times ``mm_per_px``
- wrist_calibrated: native px times ``width_mm / |p_a - p_b|`` of the ground truth
- pixel_only: native px

The mixed-set aggregate pools errors measured on the resized grid in pixels.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Protocol

import numpy as np
import torch
from torch.utils.data import DataLoader

from src.landmarker.config import settings
from src.landmarker.services.data.dataset import LandmarkDataset
from src.landmarker.services.data.schemas import (
    DatasetManifest,
    DatasetSplit,
    DomainSpec,
    UniformSpacing,
    WristCalibratedSpacing,
)
from src.landmarker.services.heatmap.codec import decode_batch
from src.landmarker.services.metrics.errors import radial_errors, summarize, wrist_scale
from src.landmarker.services.metrics.exceptions import EmptyInputError
from src.landmarker.services.metrics.schemas import (
    DomainMetrics,
    MetricSpace,
    MetricsReport,
    MetricUnit,
)
from src.landmarker.services.models.variants import LandmarkModel

logger = logging.getLogger(__name__)

# SDR thresholds of the mixed-set aggregate, in resized pixels.
AGGREGATE_THRESHOLDS = [2.0, 4.0, 6.0]
AGGREGATE_DOMAIN = "all"


class Predictor(Protocol):
    """Maps a collated batch to heatmaps ``[B, C', H, W]``."""

    def __call__(self, batch: dict[str, Any], domain_index: int) -> torch.Tensor: ...


class ModelPredictor:
    """Runs a trained model in eval mode on the batch images."""

    def __init__(self, model: LandmarkModel, device: str | torch.device | None = None):
        self.device = torch.device(device or settings.device)
        self.model = model.to(self.device).eval()

    @torch.no_grad()
    def __call__(self, batch: dict[str, Any], domain_index: int) -> torch.Tensor:
        return self.model(batch["image"].to(self.device), domain_index).cpu()


class OraclePredictor:
    """Returns the encoded targets: the best any heatmap model can do."""

    def __call__(self, batch: dict[str, Any], domain_index: int) -> torch.Tensor:
        return batch["target"]


@dataclass
class DomainEvaluation:
    """Metrics of one domain together with the raw per-landmark numbers."""

    domain: DomainSpec
    metrics: DomainMetrics
    image_ids: list[str]
    errors: np.ndarray  # [N, K] in the report unit
    resized_errors: np.ndarray  # [N, K] resized px
    predicted_native: np.ndarray  # [N, K, 2]
    truth_native: np.ndarray  # [N, K, 2]


def measurement_scale(domain: DomainSpec, truth_native: np.ndarray) -> tuple[float, MetricUnit]:
    """Factor from native pixels to the domain's report unit for one image."""
    spacing = domain.spacing
    if isinstance(spacing, UniformSpacing):
        return spacing.mm_per_px, MetricUnit.MM
    if isinstance(spacing, WristCalibratedSpacing):
        scale = wrist_scale(truth_native, spacing.width_mm, spacing.index_a, spacing.index_b)
        return scale, MetricUnit.MM
    return 1.0, MetricUnit.PX


def evaluate(
    predictor: Predictor,
    dataset: LandmarkDataset,
    domain: DomainSpec | None = None,
    thresholds: Sequence[float] | None = None,
    *,
    batch_size: int = 4,
) -> DomainEvaluation:
    """
    Evaluate a predictor on one domain's split.

    Args:
        predictor: Heatmap predictor (``ModelPredictor`` or ``OraclePredictor``)
        dataset: Non-augmented dataset of the split to evaluate
        domain: Domain description; defaults to the dataset's
        thresholds: SDR thresholds in the report unit; defaults to the domain's

    Returns:
        DomainEvaluation with the report entry and per-landmark errors

    Raises:
        EmptyInputError: If the split has no images
        CalibrationError: If a wrist-calibrated image has coincident endpoints
    """
    domain = domain or dataset.domain
    if len(dataset) == 0:
        raise EmptyInputError(f"Domain '{domain.domain_id}' has no {dataset.split.value} images")
    thresholds = sorted(thresholds) if thresholds else domain.thresholds

    image_ids: list[str] = []
    errors: list[np.ndarray] = []
    resized_errors: list[np.ndarray] = []
    predicted_native: list[np.ndarray] = []
    truth_native: list[np.ndarray] = []
    unit = MetricUnit.PX

    for batch in DataLoader(dataset, batch_size=batch_size, shuffle=False):
        heatmaps = predictor(batch, dataset.domain_index)
        decoded = decode_batch(heatmaps.detach().cpu().numpy())
        for row, index in enumerate(batch["index"].tolist()):
            sample = dataset.sample(index)
            assert sample.native_landmarks is not None
            truth = sample.native_landmarks.as_array()
            predicted = sample.transform.to_native(decoded[row])
            scale, unit = measurement_scale(domain, truth)

            image_ids.append(dataset.records[index].image_id)
            errors.append(radial_errors(predicted, truth, (scale, scale)))
            resized_errors.append(radial_errors(decoded[row], sample.landmarks.as_array()))
            predicted_native.append(predicted)
            truth_native.append(truth)

    error_array = np.stack(errors)
    metrics = summarize(
        error_array,
        thresholds,
        domain_id=domain.domain_id,
        unit=unit,
        space=MetricSpace.NATIVE,
    )
    logger.info(
        f"Evaluated domain '{domain.domain_id}'",
        extra={"images": len(image_ids), "mre": metrics.mre, "unit": unit.value},
    )
    return DomainEvaluation(
        domain=domain,
        metrics=metrics,
        image_ids=image_ids,
        errors=error_array,
        resized_errors=np.stack(resized_errors),
        predicted_native=np.stack(predicted_native),
        truth_native=np.stack(truth_native),
    )


def aggregate(evaluations: Sequence[DomainEvaluation]) -> DomainMetrics:
    """Pool resized-pixel errors of every domain into one mixed-set entry."""
    return summarize(
        [e.resized_errors for e in evaluations],
        AGGREGATE_THRESHOLDS,
        domain_id=AGGREGATE_DOMAIN,
        unit=MetricUnit.PX,
        space=MetricSpace.RESIZED,
        n_images=sum(len(e.image_ids) for e in evaluations),
    )


def evaluate_domains(
    predictor: Predictor,
    manifests: Sequence[DatasetManifest],
    *,
    sigma: float,
    split: DatasetSplit = DatasetSplit.TEST,
    thresholds: Sequence[float] | None = None,
    domain_indices: Sequence[int] | None = None,
    batch_size: int = 4,
) -> tuple[MetricsReport, list[DomainEvaluation]]:
    """
    Evaluate every manifest and build the full report.

    Args:
        predictor: Heatmap predictor
        manifests: Loaded manifests
        sigma: Target width used to encode ground truth (oracle predictions)
        split: Split to evaluate
        thresholds: Override for every domain's SDR thresholds
        domain_indices: Model domain index of each manifest; defaults to position

    Returns:
        The report and the per-domain evaluations it was built from
    """
    indices = list(domain_indices) if domain_indices is not None else list(range(len(manifests)))
    evaluations = [
        evaluate(
            predictor,
            LandmarkDataset(manifest, split, domain_index=index, sigma=sigma),
            manifest.domain,
            thresholds,
            batch_size=batch_size,
        )
        for manifest, index in zip(manifests, indices, strict=True)
    ]
    report = MetricsReport(
        split=split.value,
        domains=[e.metrics for e in evaluations],
        aggregate=aggregate(evaluations),
    )
    return report, evaluations
