"""Universal multi-domain anatomical landmark detection."""

__version__ = "0.1.0"
