"""Radial errors, wrist calibration and MRE/SDR summaries."""

import math
from collections.abc import Iterable, Sequence

import numpy as np

from src.landmarker.exceptions import ContractViolation
from src.landmarker.services.heatmap.schemas import LandmarkSet
from src.landmarker.services.metrics.exceptions import CalibrationError, EmptyInputError
from src.landmarker.services.metrics.schemas import DomainMetrics, MetricSpace, MetricUnit

Points = LandmarkSet | np.ndarray


def _as_points(points: Points) -> np.ndarray:
    if isinstance(points, LandmarkSet):
        return points.as_array()
    return np.asarray(points, dtype=np.float64).reshape(-1, 2)


def radial_errors(
    predicted: Points,
    truth: Points,
    scale: tuple[float, float] | float = (1.0, 1.0),
) -> np.ndarray:
    """
    Euclidean distance between corresponding landmarks after per-axis scaling.

    Args:
        predicted: Predicted points
        truth: Ground-truth points, same count and order
        scale: (sx, sy) factors from the input pixel grid to the measurement space

    Returns:
        Array of K distances

    Raises:
        ContractViolation: If counts or domains differ
    """
    if (
        isinstance(predicted, LandmarkSet)
        and isinstance(truth, LandmarkSet)
        and predicted.domain_id != truth.domain_id
    ):
        raise ContractViolation(
            f"Cannot compare landmarks of domain '{predicted.domain_id}' with '{truth.domain_id}'"
        )
    pred, true = _as_points(predicted), _as_points(truth)
    if pred.shape != true.shape:
        raise ContractViolation(f"{len(pred)} predicted landmarks vs {len(true)} ground truth")

    sx, sy = (scale, scale) if isinstance(scale, (int, float)) else scale
    dx = (pred[:, 0] - true[:, 0]) * sx
    dy = (pred[:, 1] - true[:, 1]) * sy
    return np.sqrt(dx * dx + dy * dy)


def wrist_scale(truth: Points, width_mm: float = 50.0, index_a: int = 0, index_b: int = 4) -> float:
    """
    Millimetres per pixel assuming the two ground-truth wrist endpoints are ``width_mm`` apart.

    Raises:
        CalibrationError: If an index is out of range or the endpoints coincide
    """
    points = _as_points(truth)
    for index in (index_a, index_b):
        if not 0 <= index < len(points):
            raise CalibrationError(f"Calibration landmark {index} out of range for {len(points)} points")
    dx, dy = points[index_b] - points[index_a]
    distance = math.sqrt(dx * dx + dy * dy)
    if distance == 0.0:
        raise CalibrationError(
            f"Calibration landmarks {index_a} and {index_b} coincide; cannot derive a scale"
        )
    return width_mm / distance


def _flatten(errors: np.ndarray | Iterable[np.ndarray] | Sequence[float]) -> list[float]:
    if isinstance(errors, np.ndarray):
        return [float(e) for e in errors.ravel()]
    values: list[float] = []
    for item in errors:
        values.extend(float(e) for e in np.ravel(item))
    return values


def summarize(
    errors: np.ndarray | Iterable[np.ndarray] | Sequence[float],
    thresholds: Sequence[float],
    *,
    domain_id: str = "",
    unit: MetricUnit = MetricUnit.PX,
    space: MetricSpace = MetricSpace.NATIVE,
    n_images: int | None = None,
    n_landmarks: int | None = None,
) -> DomainMetrics:
    """
    Summarise radial errors as MRE, population STD and SDR.

    SDR at threshold t is the percentage of errors ``<= t``.

    Args:
        errors: Distances, either ``[n_images, K]`` or any nesting of per-image arrays
        thresholds: SDR thresholds in the errors' unit

    Raises:
        EmptyInputError: If there are no errors
    """
    values = _flatten(errors)
    if not values:
        raise EmptyInputError("Cannot summarise an empty set of errors")
    if any(math.isnan(v) for v in values):
        raise ContractViolation("Radial errors contain NaN")

    count = len(values)
    mre = math.fsum(values) / count
    std = math.sqrt(math.fsum((v - mre) ** 2 for v in values) / count)
    sdr = {float(t): 100.0 * sum(1 for v in values if v <= t) / count for t in thresholds}

    if n_landmarks is None and isinstance(errors, np.ndarray) and errors.ndim == 2:
        n_landmarks = errors.shape[1]
    if n_images is None and isinstance(errors, np.ndarray) and errors.ndim == 2:
        n_images = errors.shape[0]
    return DomainMetrics(
        domain_id=domain_id,
        unit=unit,
        space=space,
        mre=mre,
        std=std,
        sdr=sdr,
        n_images=n_images or 0,
        n_landmarks=n_landmarks or 0,
        n_errors=count,
    )
