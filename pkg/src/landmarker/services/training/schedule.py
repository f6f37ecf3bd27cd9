"""Triangular cyclic learning rate."""

from torch.optim import Optimizer
from torch.optim.lr_scheduler import LambdaLR

from src.landmarker.services.training.schemas import TrainConfig


def cyclic_lr(step: int, config: TrainConfig, steps_per_epoch: int) -> float:
    """
    Learning rate at an optimizer step.

    Starts at ``lr_max``, falls linearly to ``lr_min`` over ``cycle_length``
    epochs, climbs back over the next ``cycle_length`` and repeats, so the period
    is ``2 * cycle_length * steps_per_epoch`` steps.
    """
    half_cycle = config.cycle_length * max(steps_per_epoch, 1)
    position = (step % (2 * half_cycle)) / half_cycle
    fraction = position if position <= 1.0 else 2.0 - position
    return config.lr_max - (config.lr_max - config.lr_min) * fraction


def build_scheduler(optimizer: Optimizer, config: TrainConfig, steps_per_epoch: int) -> LambdaLR:
    """Per-step scheduler applying ``cyclic_lr`` to an optimizer created at ``lr_max``."""
    return LambdaLR(
        optimizer, lambda step: cyclic_lr(step, config, steps_per_epoch) / config.lr_max
    )
