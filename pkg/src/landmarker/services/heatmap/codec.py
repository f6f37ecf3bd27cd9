"""Gaussian heatmap targets and argmax decoding.

Targets follow the isotropic Gaussian with the ``1/(sqrt(2*pi)*sigma)``
normalisation constant, evaluated over the whole image without truncation, so a
landmark on an integer pixel peaks at ``1/(sqrt(2*pi)*sigma)`` (about 0.133 at
sigma = 3). ``peak_normalized=True`` rescales the peak to exactly 1.

All functions here are pure and safe to call from any number of workers.
"""

import math

import numpy as np

from src.landmarker.exceptions import ContractViolation
from src.landmarker.services.heatmap.exceptions import (
    HeatmapDecodeError,
    LandmarkOutOfBounds,
    WrongCoordinateSpace,
)
from src.landmarker.services.heatmap.schemas import CoordinateSpace, Heatmap, LandmarkSet


def peak_value(sigma: float) -> float:
    """Value of an encoded channel at its landmark: ``1/(sqrt(2*pi)*sigma)``."""
    return 1.0 / (math.sqrt(2.0 * math.pi) * sigma)


def encode_heatmap(
    landmarks: LandmarkSet,
    height: int,
    width: int,
    sigma: float,
    *,
    expected_count: int | None = None,
    peak_normalized: bool = False,
    dtype: type[np.floating] = np.float64,
) -> Heatmap:
    """
    Encode landmarks as one Gaussian channel each.

    Args:
        landmarks: Landmarks in resized space
        height: Heatmap height in pixels
        width: Heatmap width in pixels
        sigma: Gaussian standard deviation in resized pixels
        expected_count: Landmark count declared by the domain, checked when given
        peak_normalized: Scale each channel so its analytic peak equals 1
        dtype: Output floating point type

    Returns:
        Heatmap with values of shape [K, height, width]

    Raises:
        WrongCoordinateSpace: If landmarks are in native space
        ContractViolation: If the landmark count differs from expected_count, or sigma <= 0
        LandmarkOutOfBounds: If a point lies outside [0, width) x [0, height)
    """
    if landmarks.space is not CoordinateSpace.RESIZED:
        raise WrongCoordinateSpace("Heatmaps are encoded from resized-space landmarks only")
    if sigma <= 0:
        raise ContractViolation(f"sigma must be positive, got {sigma}")
    if expected_count is not None and len(landmarks) != expected_count:
        raise ContractViolation(
            f"Domain '{landmarks.domain_id}' declares {expected_count} landmarks, "
            f"got {len(landmarks)}"
        )

    points = landmarks.as_array()
    for index, (x, y) in enumerate(points):
        if not (0.0 <= x < width and 0.0 <= y < height):
            raise LandmarkOutOfBounds(index, (float(x), float(y)), width, height)

    xs = np.arange(width, dtype=np.float64)
    ys = np.arange(height, dtype=np.float64)
    dx2 = (xs[None, :] - points[:, 0:1]) ** 2  # [K, W]
    dy2 = (ys[None, :] - points[:, 1:2]) ** 2  # [K, H]
    squared = dy2[:, :, None] + dx2[:, None, :]  # [K, H, W]

    values = np.exp(-squared / (2.0 * sigma * sigma))
    if not peak_normalized:
        values *= peak_value(sigma)

    return Heatmap(domain_id=landmarks.domain_id, values=values.astype(dtype), sigma=sigma)


def decode_heatmap(heatmap: Heatmap, *, image_id: str = "") -> LandmarkSet:
    """
    Decode each channel to the pixel of its maximum value.

    Ties resolve to the smallest row-major index, so an all-zero channel decodes
    to (0, 0).

    Args:
        heatmap: Heatmap with at least one channel
        image_id: Identifier copied to the result

    Returns:
        LandmarkSet in resized space with integer-valued coordinates

    Raises:
        ContractViolation: If the heatmap is not 3-dimensional or has no channels
        HeatmapDecodeError: If a channel contains NaN
    """
    values = np.asarray(heatmap.values)
    if values.ndim != 3 or values.shape[0] == 0:
        raise ContractViolation(f"Expected heatmap of shape [C, H, W], got {values.shape}")

    channels, _, width = values.shape
    flat = values.reshape(channels, -1)
    nan_rows = np.isnan(flat).any(axis=1)
    if nan_rows.any():
        raise HeatmapDecodeError(int(np.flatnonzero(nan_rows)[0]), "contains NaN")

    # np.argmax returns the first occurrence of the maximum.
    indices = flat.argmax(axis=1)
    points = np.stack([indices % width, indices // width], axis=1).astype(np.float64)
    return LandmarkSet.from_array(
        points, domain_id=heatmap.domain_id, image_id=image_id, space=CoordinateSpace.RESIZED
    )


def decode_batch(values: np.ndarray) -> np.ndarray:
    """
    Decode a batch of heatmaps without building intermediate schema objects.

    Args:
        values: Array of shape [B, K, H, W]

    Returns:
        Array of shape [B, K, 2] with (x, y) per landmark
    """
    batch, channels, _, width = values.shape
    flat = values.reshape(batch, channels, -1)
    if np.isnan(flat).any():
        channel = int(np.flatnonzero(np.isnan(flat).any(axis=(0, 2)))[0])
        raise HeatmapDecodeError(channel, "contains NaN")
    indices = flat.argmax(axis=2)
    return np.stack([indices % width, indices // width], axis=2).astype(np.float64)
