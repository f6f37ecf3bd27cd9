"""Synthetic corpus command."""

from src.landmarker.features.synth.handlers import register

__all__ = ["register"]
