"""Overlay rendering command."""

from src.landmarker.features.visualize.handlers import register

__all__ = ["register"]
