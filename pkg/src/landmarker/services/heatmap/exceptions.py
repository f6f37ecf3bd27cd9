"""Custom exceptions for the heatmap codec."""

from src.landmarker.exceptions import ValidationFailure


class HeatmapError(ValidationFailure):
    """Base exception for codec errors."""

    pass


class LandmarkOutOfBounds(HeatmapError):
    """Raised when a landmark lies outside the image it is encoded into."""

    def __init__(self, index: int, point: tuple[float, float], width: int, height: int):
        self.index = index
        self.point = point
        super().__init__(
            f"Landmark {index} at (x={point[0]}, y={point[1]}) is outside "
            f"[0, {width}) x [0, {height})"
        )


class WrongCoordinateSpace(HeatmapError):
    """Raised when landmarks are tagged with the wrong coordinate space for an operation."""

    pass


class HeatmapDecodeError(HeatmapError):
    """Raised when a heatmap channel cannot be decoded."""

    def __init__(self, channel: int, reason: str):
        self.channel = channel
        super().__init__(f"Cannot decode channel {channel}: {reason}")
