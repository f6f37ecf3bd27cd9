"""Parameter audit command."""

from src.landmarker.features.audit.handlers import register

__all__ = ["register"]
