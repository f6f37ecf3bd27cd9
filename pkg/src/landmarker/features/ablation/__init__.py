"""Variant comparison command."""

from src.landmarker.features.ablation.handlers import register

__all__ = ["register"]
