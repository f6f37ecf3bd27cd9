"""Custom exceptions for metric computation."""

from src.landmarker.exceptions import ValidationFailure


class MetricsError(ValidationFailure):
    """Base exception for metric errors."""

    pass


class CalibrationError(MetricsError):
    """Raised when a per-image physical scale cannot be derived."""

    pass


class EmptyInputError(MetricsError):
    """Raised when there are no errors to summarise."""

    pass
