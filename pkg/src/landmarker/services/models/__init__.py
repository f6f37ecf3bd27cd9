"""Network architectures, parameter accounting and checkpoints."""

from src.landmarker.services.models.blocks import SeparableConv2d
from src.landmarker.services.models.checkpoint import load_checkpoint, save_checkpoint
from src.landmarker.services.models.networks import GlobalNetwork, UNetHeatmapNet, fuse
from src.landmarker.services.models.params import count_params
from src.landmarker.services.models.schemas import (
    ArchitectureConfig,
    ModelConfig,
    ParamCount,
    VariantKind,
)
from src.landmarker.services.models.variants import LandmarkModel, build_variant

__all__ = [
    "ArchitectureConfig",
    "GlobalNetwork",
    "LandmarkModel",
    "ModelConfig",
    "ParamCount",
    "SeparableConv2d",
    "UNetHeatmapNet",
    "VariantKind",
    "build_variant",
    "count_params",
    "fuse",
    "load_checkpoint",
    "save_checkpoint",
]
