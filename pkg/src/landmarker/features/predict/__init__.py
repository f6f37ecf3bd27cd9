"""Single-image prediction command."""

from src.landmarker.features.predict.handlers import register

__all__ = ["register"]
