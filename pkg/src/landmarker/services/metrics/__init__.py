"""Radial error metrics, spacing conversion and report output."""

from src.landmarker.services.metrics.errors import radial_errors, summarize, wrist_scale
from src.landmarker.services.metrics.evaluate import (
    ModelPredictor,
    OraclePredictor,
    evaluate,
    evaluate_domains,
)
from src.landmarker.services.metrics.schemas import DomainMetrics, MetricsReport

__all__ = [
    "DomainMetrics",
    "MetricsReport",
    "ModelPredictor",
    "OraclePredictor",
    "evaluate",
    "evaluate_domains",
    "radial_errors",
    "summarize",
    "wrist_scale",
]
