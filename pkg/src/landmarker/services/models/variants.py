"""
Model variant registry.

Every variant maps an image batch ``[B, C, H, W]`` and a domain index to a
heatmap batch ``[B, C'_domain, H, W]`` with values in (0, 1).

Available variants:
- gu2net: separable local U-Net fused with the per-domain global network
- unet: standard U-Net shared by all domains, per-domain output heads
- tri_unet: one full U-Net copy per domain
- local_only: the separable local U-Net alone
- global_only: the per-domain global network on the downsampled image alone
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import torch
from torch import nn

from src.landmarker.services.models.exceptions import UnknownVariantError
from src.landmarker.services.models.networks import (
    BlockKind,
    GlobalNetwork,
    UNetHeatmapNet,
    fuse,
)
from src.landmarker.services.models.schemas import ModelConfig, VariantKind

logger = logging.getLogger(__name__)


@dataclass
class BranchOutputs:
    """Heatmaps produced by each branch of a forward pass."""

    fused: torch.Tensor
    local: torch.Tensor | None = None
    global_: torch.Tensor | None = None


class LandmarkModel(nn.Module):
    """Base class: a network built for a fixed, ordered list of domains."""

    variant: VariantKind

    def __init__(self, config: ModelConfig):
        super().__init__()
        self.config = config

    def forward_branches(self, x: torch.Tensor, domain_index: int) -> BranchOutputs:
        raise NotImplementedError

    def forward(self, x: torch.Tensor, domain_index: int) -> torch.Tensor:
        return self.forward_branches(x, domain_index).fused


class GU2Net(LandmarkModel):
    """Local separable U-Net fused with the per-domain global dilated network."""

    variant = VariantKind.GU2NET

    def __init__(self, config: ModelConfig):
        super().__init__(config)
        self.local_net = UNetHeatmapNet(config, BlockKind.SEPARABLE)
        self.global_net = GlobalNetwork(config, with_local=True)

    def forward_branches(self, x: torch.Tensor, domain_index: int) -> BranchOutputs:
        local = self.local_net(x, domain_index)
        global_ = self.global_net(x, local, domain_index)
        return BranchOutputs(fused=fuse(local, global_), local=local, global_=global_)


class _UNetVariant(LandmarkModel):
    block_kind: BlockKind

    def __init__(self, config: ModelConfig):
        super().__init__(config)
        self.local_net = UNetHeatmapNet(config, self.block_kind)

    def forward_branches(self, x: torch.Tensor, domain_index: int) -> BranchOutputs:
        local = self.local_net(x, domain_index)
        return BranchOutputs(fused=local, local=local)


class UNetModel(_UNetVariant):
    """Plain U-Net shared across domains."""

    variant = VariantKind.UNET
    block_kind = BlockKind.SHARED


class TriUNetModel(_UNetVariant):
    """U-Net with every convolution block duplicated once per domain."""

    variant = VariantKind.TRI_UNET
    block_kind = BlockKind.PER_DOMAIN


class LocalOnlyModel(_UNetVariant):
    """The separable local network without the global branch."""

    variant = VariantKind.LOCAL_ONLY
    block_kind = BlockKind.SEPARABLE


class GlobalOnlyModel(LandmarkModel):
    """The per-domain global network fed with the downsampled image only."""

    variant = VariantKind.GLOBAL_ONLY

    def __init__(self, config: ModelConfig):
        super().__init__(config)
        self.global_net = GlobalNetwork(config, with_local=False)

    def forward_branches(self, x: torch.Tensor, domain_index: int) -> BranchOutputs:
        global_ = self.global_net(x, None, domain_index)
        return BranchOutputs(fused=global_, global_=global_)


# Variant registry
MODEL_VARIANTS: dict[VariantKind, Callable[[ModelConfig], LandmarkModel]] = {
    VariantKind.GU2NET: GU2Net,
    VariantKind.UNET: UNetModel,
    VariantKind.TRI_UNET: TriUNetModel,
    VariantKind.LOCAL_ONLY: LocalOnlyModel,
    VariantKind.GLOBAL_ONLY: GlobalOnlyModel,
}


def build_variant(kind: VariantKind | str, config: ModelConfig) -> LandmarkModel:
    """
    Build a model variant.

    Args:
        kind: Variant name or VariantKind
        config: Architecture hyperparameters including the domain list

    Returns:
        Freshly initialised model in training mode

    Raises:
        UnknownVariantError: If kind is not a supported variant

    Example:
        >>> model = build_variant("gu2net", config)
        >>> heatmaps = model(images, domain_index=0)
    """
    try:
        variant = VariantKind(kind)
    except ValueError:
        raise UnknownVariantError(
            f"Unsupported model variant: {kind}. Supported: {[v.value for v in VariantKind]}"
        ) from None

    model = MODEL_VARIANTS[variant](config)
    logger.debug(
        f"Built {variant.value} for {config.num_domains} domain(s)",
        extra={"variant": variant.value, "domains": config.domain_ids},
    )
    return model
