"""Checkpoint archive: model config as JSON plus named parameter arrays.

State-dict names follow the module tree, ``{branch}.{level}.{block}.{bank}``,
and every domain-specific tensor carries its domain id as a path segment, e.g.
``local_net.backbone.encoders.1.conv2.channel_wise.head.weight``.
"""

import logging
import os
import pickle
from pathlib import Path
from typing import Any

import torch
from pydantic import BaseModel, ValidationError

from src.landmarker.services.models.exceptions import CheckpointError
from src.landmarker.services.models.schemas import ModelConfig, VariantKind
from src.landmarker.services.models.variants import LandmarkModel, build_variant

logger = logging.getLogger(__name__)

# 2: normalisation statistics stored per domain.
CHECKPOINT_FORMAT = 2


class CheckpointMeta(BaseModel):
    """Bookkeeping stored next to the weights."""

    variant: VariantKind
    epoch: int | None = None
    val_loss: float | None = None


def save_checkpoint(
    path: Path,
    model: LandmarkModel,
    *,
    epoch: int | None = None,
    val_loss: float | None = None,
) -> Path:
    """
    Write a checkpoint atomically.

    Args:
        path: Destination file
        model: Model to store
        epoch: Epoch the weights belong to
        val_loss: Validation loss at that epoch

    Returns:
        The written path

    Raises:
        CheckpointError: If the archive cannot be written
    """
    payload: dict[str, Any] = {
        "format": CHECKPOINT_FORMAT,
        "model_config": model.config.model_dump_json(),
        "meta": CheckpointMeta(variant=model.variant, epoch=epoch, val_loss=val_loss).model_dump(
            mode="json"
        ),
        "state_dict": {name: t.detach().cpu() for name, t in model.state_dict().items()},
    }
    tmp_path = path.with_name(path.name + ".tmp")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        torch.save(payload, tmp_path)
        os.replace(tmp_path, path)
    except OSError as e:
        logger.error(f"Failed to write checkpoint {path}: {e}", exc_info=True)
        raise CheckpointError(f"Cannot write checkpoint {path}: {e}") from e

    logger.debug(f"Saved checkpoint {path}", extra={"epoch": epoch, "val_loss": val_loss})
    return path


def load_checkpoint(
    path: Path, map_location: str | torch.device = "cpu"
) -> tuple[LandmarkModel, CheckpointMeta]:
    """
    Rebuild a model from a checkpoint, bit-exactly.

    The model is cast to the floating point type of the stored tensors before the
    weights are copied in, and returned in eval mode.

    Raises:
        CheckpointError: If the file is missing, unreadable or inconsistent
    """
    if not path.is_file():
        raise CheckpointError(f"Checkpoint not found: {path}")
    try:
        payload = torch.load(path, map_location=map_location, weights_only=True)
        config = ModelConfig.model_validate_json(payload["model_config"])
        meta = CheckpointMeta.model_validate(payload["meta"])
    except (OSError, RuntimeError, EOFError, KeyError, pickle.UnpicklingError, ValidationError) as e:
        raise CheckpointError(f"Cannot read checkpoint {path}: {e}") from e

    if payload.get("format") != CHECKPOINT_FORMAT:
        raise CheckpointError(
            f"Checkpoint {path} has format {payload.get('format')}, expected {CHECKPOINT_FORMAT}"
        )

    state_dict: dict[str, torch.Tensor] = payload["state_dict"]
    model = build_variant(meta.variant, config)
    float_types = {t.dtype for t in state_dict.values() if t.is_floating_point()}
    if len(float_types) == 1:
        model = model.to(float_types.pop())

    try:
        model.load_state_dict(state_dict, strict=True)
    except RuntimeError as e:
        raise CheckpointError(f"Checkpoint {path} does not match its config: {e}") from e

    model.eval()
    return model, meta
