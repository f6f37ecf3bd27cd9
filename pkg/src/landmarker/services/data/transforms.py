"""Resizing with coordinate transforms and affine training augmentation."""

import logging
import math
from dataclasses import replace

import numpy as np
import torch
import torch.nn.functional as F
from PIL import Image

from src.landmarker.services.data.exceptions import ImageLoadError
from src.landmarker.services.data.schemas import AugmentConfig, ResizeTransform, Sample
from src.landmarker.services.heatmap.exceptions import LandmarkOutOfBounds, WrongCoordinateSpace
from src.landmarker.services.heatmap.schemas import CoordinateSpace, LandmarkSet

logger = logging.getLogger(__name__)


def _resize_plane(plane: np.ndarray, height: int, width: int) -> np.ndarray:
    resized = Image.fromarray(plane.astype(np.float32)).resize(
        (width, height), resample=Image.Resampling.BILINEAR
    )
    return np.asarray(resized, dtype=np.float32)


def resize_image(image: np.ndarray, resize_to: tuple[int, int]) -> tuple[np.ndarray, ResizeTransform]:
    """
    Bilinearly resample a [C, H0, W0] image to ``resize_to`` (H, W).

    Raises:
        ImageLoadError: If the image has a zero-sized dimension
    """
    if image.ndim != 3 or 0 in image.shape:
        raise ImageLoadError(f"Cannot resize image of shape {image.shape}")
    native_h, native_w = int(image.shape[1]), int(image.shape[2])
    height, width = resize_to
    if (native_h, native_w) == (height, width):
        resized = image.astype(np.float32, copy=True)
    else:
        resized = np.stack([_resize_plane(plane, height, width) for plane in image])
    return resized, ResizeTransform(native_size=(native_h, native_w), resized_size=(height, width))


def resize_with_landmarks(
    image: np.ndarray,
    landmarks: LandmarkSet,
    resize_to: tuple[int, int],
) -> Sample:
    """
    Resample an image to ``resize_to`` (H, W) and scale its landmarks to match.

    Coordinates scale independently per axis by (W/W0, H/H0); the returned
    sample keeps the transform so predictions can be mapped back to native pixels.

    Args:
        image: Array of shape [C, H0, W0]
        landmarks: Landmarks in native space
        resize_to: Target (H, W)

    Returns:
        Sample in resized space, native landmarks retained

    Raises:
        ImageLoadError: If the native image has a zero-sized dimension
        LandmarkOutOfBounds: If a native landmark lies outside the image
    """
    if image.ndim != 3 or 0 in image.shape:
        raise ImageLoadError(f"Cannot resize image of shape {image.shape}")
    if landmarks.space is not CoordinateSpace.NATIVE:
        raise WrongCoordinateSpace("resize_with_landmarks expects native-space landmarks")

    native_h, native_w = int(image.shape[1]), int(image.shape[2])
    points = landmarks.as_array()
    for index, (x, y) in enumerate(points):
        if not (0.0 <= x < native_w and 0.0 <= y < native_h):
            raise LandmarkOutOfBounds(index, (float(x), float(y)), native_w, native_h)

    resized, transform = resize_image(image, resize_to)
    return Sample(
        image=resized,
        landmarks=LandmarkSet.from_array(
            transform.to_resized(points),
            domain_id=landmarks.domain_id,
            image_id=landmarks.image_id,
            space=CoordinateSpace.RESIZED,
        ),
        native_size=(native_h, native_w),
        domain_id=landmarks.domain_id,
        transform=transform,
        native_landmarks=landmarks,
    )


def rotation_matrix(degrees: float, center: tuple[float, float]) -> np.ndarray:
    """Homogeneous 3x3 rotation about ``center`` = (x, y) in pixel coordinates."""
    theta = math.radians(degrees)
    cos, sin = math.cos(theta), math.sin(theta)
    cx, cy = center
    return np.array(
        [
            [cos, -sin, cx - cos * cx + sin * cy],
            [sin, cos, cy - sin * cx - cos * cy],
            [0.0, 0.0, 1.0],
        ]
    )


def translation_matrix(dx: float, dy: float) -> np.ndarray:
    """Homogeneous 3x3 translation."""
    return np.array([[1.0, 0.0, dx], [0.0, 1.0, dy], [0.0, 0.0, 1.0]])


def transform_points(points: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    """Apply a homogeneous 3x3 map to an array of (x, y) points."""
    homogeneous = np.concatenate([points, np.ones((len(points), 1))], axis=1)
    return (homogeneous @ matrix.T)[:, :2]


def warp_image(image: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    """
    Warp a [C, H, W] image so that input pixel p lands on ``matrix @ p``.

    Bilinear sampling; pixels mapped from outside the frame are zero.
    """
    _, height, width = image.shape
    inverse = np.linalg.inv(matrix)
    ys, xs = np.meshgrid(np.arange(height), np.arange(width), indexing="ij")
    target = np.stack([xs.ravel(), ys.ravel()], axis=1).astype(np.float64)
    source = transform_points(target, inverse)

    # align_corners=True maps -1 and 1 to the centres of the border pixels.
    grid_x = 2.0 * source[:, 0] / max(width - 1, 1) - 1.0
    grid_y = 2.0 * source[:, 1] / max(height - 1, 1) - 1.0
    grid = np.stack([grid_x, grid_y], axis=1).reshape(1, height, width, 2)

    tensor = torch.from_numpy(np.ascontiguousarray(image))[None]
    warped = F.grid_sample(
        tensor,
        torch.from_numpy(grid).to(tensor.dtype),
        mode="bilinear",
        padding_mode="zeros",
        align_corners=True,
    )
    return warped[0].numpy()


def apply_affine(sample: Sample, matrix: np.ndarray) -> Sample | None:
    """
    Apply one affine map to a sample's image and landmarks.

    Returns:
        The transformed sample, or None if a landmark leaves the frame
    """
    _, height, width = sample.image.shape
    moved = transform_points(sample.landmarks.as_array(), matrix)
    inside = (moved[:, 0] >= 0) & (moved[:, 0] < width) & (moved[:, 1] >= 0) & (moved[:, 1] < height)
    if not inside.all():
        return None

    landmarks = LandmarkSet.from_array(
        moved,
        domain_id=sample.landmarks.domain_id,
        image_id=sample.landmarks.image_id,
        space=CoordinateSpace.RESIZED,
    )
    return replace(sample, image=warp_image(sample.image, matrix), landmarks=landmarks)


def augment(
    sample: Sample,
    rng: np.random.Generator,
    config: AugmentConfig | None = None,
) -> Sample:
    """
    Randomly rotate and translate a training sample.

    With probability ``rotate_prob`` rotates by exactly ``rotate_degrees`` about
    the image centre (sign drawn uniformly); with probability ``translate_prob``
    shifts by integers drawn uniformly from [-translate_px, translate_px] per
    axis. If a landmark leaves the frame the draw is repeated, up to
    ``max_attempts`` times, after which the sample is returned unchanged.
    """
    config = config or AugmentConfig()
    _, height, width = sample.image.shape
    center = ((width - 1) / 2.0, (height - 1) / 2.0)

    for _ in range(config.max_attempts):
        matrix = np.eye(3)
        changed = False
        if rng.random() < config.rotate_prob:
            sign = 1.0 if rng.random() < 0.5 else -1.0
            matrix = rotation_matrix(sign * config.rotate_degrees, center) @ matrix
            changed = True
        if rng.random() < config.translate_prob:
            dx, dy = rng.integers(-config.translate_px, config.translate_px + 1, size=2)
            matrix = translation_matrix(float(dx), float(dy)) @ matrix
            changed = True

        if not changed:
            return sample
        augmented = apply_affine(sample, matrix)
        if augmented is not None:
            return augmented

    logger.warning(
        "Augmentation kept moving landmarks out of frame; using original sample",
        extra={"image_id": sample.landmarks.image_id, "attempts": config.max_attempts},
    )
    return sample
