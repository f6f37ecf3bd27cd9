"""Evaluation command."""

from src.landmarker.features.evaluate.handlers import register

__all__ = ["register"]
