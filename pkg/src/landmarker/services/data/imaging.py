"""Image and landmark file IO."""

import csv
import logging
from pathlib import Path

import numpy as np
from PIL import Image

from src.landmarker.services.data.exceptions import ImageLoadError, ManifestError

logger = logging.getLogger(__name__)

# Maximum representable value per PIL mode; images are scaled into [0, 1] by it.
_MODE_MAX = {"1": 1.0, "L": 255.0, "P": 255.0, "I;16": 65535.0, "I;16B": 65535.0, "I": 65535.0}


def load_image(path: Path) -> np.ndarray:
    """
    Read a raster image as a grayscale float32 array of shape [1, H, W] in [0, 1].

    Colour images are converted by luminance. 16-bit images are scaled by 65535,
    8-bit by 255; float images are clipped to [0, 1].

    Raises:
        ImageLoadError: If the file cannot be decoded or has a zero-sized dimension
    """
    try:
        with Image.open(path) as im:
            if im.mode in ("RGB", "RGBA", "CMYK", "YCbCr", "LA", "P"):
                im = im.convert("L")
            mode = im.mode
            array = np.asarray(im)
    except OSError as e:
        logger.error(f"Failed to decode image {path}: {e}", exc_info=True)
        raise ImageLoadError(f"Cannot read image {path}: {e}") from e

    if array.ndim != 2 or 0 in array.shape:
        raise ImageLoadError(f"Image {path} has unsupported shape {array.shape}")

    if mode == "F":
        values = np.clip(array.astype(np.float32), 0.0, 1.0)
    else:
        values = array.astype(np.float32) / _MODE_MAX.get(mode, 255.0)
    return values[None, :, :]


def save_image(path: Path, image: np.ndarray) -> None:
    """Write a [1, H, W] or [H, W] array in [0, 1] as an 8-bit PNG."""
    plane = np.asarray(image)
    if plane.ndim == 3:
        plane = plane[0]
    pixels = np.round(np.clip(plane, 0.0, 1.0) * 255.0).astype(np.uint8)
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(pixels).save(path, format="PNG")


def read_points_csv(path: Path) -> np.ndarray:
    """
    Read landmark coordinates from a CSV with ``x`` and ``y`` columns.

    Extra columns (e.g. ``index``) are ignored; row order is landmark order.

    Raises:
        ManifestError: If the file is missing or malformed
    """
    try:
        with path.open(newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            if reader.fieldnames is None or not {"x", "y"} <= set(reader.fieldnames):
                raise ManifestError(f"{path}: expected a header with columns x,y")
            points = [(float(row["x"]), float(row["y"])) for row in reader]
    except OSError as e:
        logger.error(f"Failed to read landmarks {path}: {e}", exc_info=True)
        raise ManifestError(f"Cannot read landmarks {path}: {e}") from e
    except (TypeError, ValueError) as e:
        raise ManifestError(f"{path}: malformed coordinate: {e}") from e
    return np.asarray(points, dtype=np.float64).reshape(-1, 2)


def write_points_csv(path: Path, points: np.ndarray, *, with_index: bool = False) -> None:
    """Write landmark coordinates as ``x,y`` (or ``index,x,y``) CSV."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["index", "x", "y"] if with_index else ["x", "y"])
        for index, (x, y) in enumerate(np.asarray(points, dtype=np.float64)):
            row = [f"{x:.6g}", f"{y:.6g}"]
            writer.writerow([index, *row] if with_index else row)
