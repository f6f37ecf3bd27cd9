"""Custom exceptions for dataset ingestion and transforms."""

from src.landmarker.exceptions import ValidationFailure


class DataError(ValidationFailure):
    """Base exception for data pipeline errors."""

    pass


class ManifestError(DataError):
    """Raised when a manifest or the files it references are invalid."""

    pass


class ImageLoadError(DataError):
    """Raised when an image cannot be read or has a zero-sized dimension."""

    pass


class EmptyDatasetError(DataError):
    """Raised when a sampler or loader is given no samples."""

    pass
