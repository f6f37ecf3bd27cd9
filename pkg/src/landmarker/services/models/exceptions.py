"""Custom exceptions for network construction and checkpoints."""

from src.landmarker.exceptions import RuntimeFailure, ValidationFailure


class ModelError(ValidationFailure):
    """Base exception for model construction and invocation errors."""

    pass


class DomainIndexError(ModelError, IndexError):
    """Raised when a forward pass names a domain the model was not built for."""

    def __init__(self, domain_index: int, num_domains: int):
        self.domain_index = domain_index
        super().__init__(f"domain_index {domain_index} out of range for {num_domains} domains")


class UnknownVariantError(ModelError):
    """Raised when an unsupported architecture variant is requested."""

    pass


class CheckpointError(RuntimeFailure):
    """Raised when a checkpoint cannot be written or read back."""

    pass


class UnknownDomainError(ModelError):
    """Raised when a domain id is not among the domains a model was built for."""

    pass


class DomainMismatchError(ModelError):
    """Raised when a model and a set of datasets disagree on their domains."""

    pass


class ParameterAuditError(RuntimeFailure):
    """Raised when parameter accounting contradicts the architecture's invariants."""

    pass
