"""Landmark and heatmap data types.

Coordinate convention used everywhere: ``x`` is the column, ``y`` is the row,
origin at the top-left pixel centre.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from pydantic import BaseModel, Field


class CoordinateSpace(str, Enum):
    """Pixel grid a landmark set is expressed in."""

    NATIVE = "native"
    RESIZED = "resized"


class LandmarkSet(BaseModel):
    """Ordered landmark coordinates of one image."""

    domain_id: str
    image_id: str = ""
    points: list[tuple[float, float]] = Field(min_length=1)
    space: CoordinateSpace = CoordinateSpace.RESIZED

    def as_array(self) -> np.ndarray:
        """Return points as a float64 array of shape [K, 2] with columns (x, y)."""
        return np.asarray(self.points, dtype=np.float64).reshape(-1, 2)

    @classmethod
    def from_array(
        cls,
        points: np.ndarray,
        domain_id: str,
        image_id: str = "",
        space: CoordinateSpace = CoordinateSpace.RESIZED,
    ) -> "LandmarkSet":
        """Build a landmark set from an array of shape [K, 2]."""
        pairs = [(float(x), float(y)) for x, y in np.asarray(points, dtype=np.float64)]
        return cls(domain_id=domain_id, image_id=image_id, points=pairs, space=space)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Heatmap:
    """Per-landmark 2D maps for one image, shape [C', H, W]."""

    domain_id: str
    values: np.ndarray
    sigma: float

    @property
    def num_channels(self) -> int:
        return int(self.values.shape[0])

    @property
    def height(self) -> int:
        return int(self.values.shape[1])

    @property
    def width(self) -> int:
        return int(self.values.shape[2])
