"""Training command."""

from src.landmarker.features.train.handlers import register

__all__ = ["register"]
