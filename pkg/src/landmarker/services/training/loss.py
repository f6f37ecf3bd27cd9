"""Binary cross-entropy between predicted and target heatmaps."""

import torch

from src.landmarker.exceptions import ContractViolation

# Predictions are clamped to [EPSILON, 1 - EPSILON] before taking logs.
EPSILON = 1e-7


def per_image_loss(
    predicted: torch.Tensor, target: torch.Tensor, eps: float = EPSILON
) -> torch.Tensor:
    """
    Cross-entropy ``-y log f - (1 - y) log(1 - f)`` summed over each image.

    Args:
        predicted: Heatmaps ``[B, C', H, W]`` with values in (0, 1)
        target: Encoded targets of the same shape with values in [0, 1]
        eps: Clamp applied to ``predicted``

    Returns:
        Tensor of shape ``[B]``

    Raises:
        ContractViolation: If shapes differ or inputs are not batched
    """
    if predicted.shape != target.shape:
        raise ContractViolation(
            f"predicted shape {tuple(predicted.shape)} != target shape {tuple(target.shape)}"
        )
    if predicted.ndim != 4:
        raise ContractViolation(f"expected [B, C, H, W] heatmaps, got {tuple(predicted.shape)}")

    f = predicted.clamp(eps, 1.0 - eps)
    per_pixel = -(target * torch.log(f) + (1.0 - target) * torch.log1p(-f))
    return per_pixel.flatten(start_dim=1).sum(dim=1)


def bce_heatmap_loss(
    predicted: torch.Tensor, target: torch.Tensor, eps: float = EPSILON
) -> torch.Tensor:
    """Batch loss: per-image sums averaged over the batch, so lr scale ignores batch size."""
    return per_image_loss(predicted, target, eps).mean()
