"""Gaussian heatmap encoding and argmax decoding."""

from src.landmarker.services.heatmap.codec import decode_heatmap, encode_heatmap, peak_value
from src.landmarker.services.heatmap.schemas import CoordinateSpace, Heatmap, LandmarkSet

__all__ = [
    "CoordinateSpace",
    "Heatmap",
    "LandmarkSet",
    "decode_heatmap",
    "encode_heatmap",
    "peak_value",
]
