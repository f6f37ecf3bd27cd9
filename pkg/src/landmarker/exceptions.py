"""Root exception hierarchy.

Every error raised on purpose by this package derives from ``LandmarkerError``.
The two branches decide the CLI exit code: ``ValidationFailure`` → 1,
``RuntimeFailure`` → 2.
"""


class LandmarkerError(Exception):
    """Base exception for all landmarker errors."""

    pass


class ValidationFailure(LandmarkerError):
    """Raised when inputs, files or configuration documents are invalid."""

    pass


class RuntimeFailure(LandmarkerError):
    """Raised when a valid request fails while running."""

    pass


class ContractViolation(ValidationFailure, ValueError):
    """Raised when array shapes or landmark counts disagree with their declaration."""

    pass


class ConfigError(ValidationFailure):
    """Raised when a configuration document cannot be read or parsed."""

    pass
