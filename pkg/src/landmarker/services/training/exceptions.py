"""Custom exceptions for the training loop."""

from src.landmarker.exceptions import RuntimeFailure


class TrainingError(RuntimeFailure):
    """Base exception for failures while training."""

    pass


class NonFiniteLossError(TrainingError):
    """Raised when a training step produces a NaN or infinite loss."""

    def __init__(self, step: int, domain_id: str, loss: float):
        self.step = step
        self.domain_id = domain_id
        self.loss = loss
        super().__init__(f"Non-finite loss {loss} at step {step} on domain '{domain_id}'")
