"""U-Net heatmap network, dilated global network and multiplicative fusion."""

from enum import Enum

import torch
import torch.nn.functional as F
from torch import nn

from src.landmarker.exceptions import ContractViolation
from src.landmarker.services.models.blocks import (
    BlockFactory,
    ConvBlock,
    DomainBank,
    DomainConvBlock,
    OutputHeads,
    SeparableConv2d,
)
from src.landmarker.services.models.schemas import ModelConfig


class BlockKind(str, Enum):
    """Convolution flavour used throughout a U-Net."""

    SEPARABLE = "separable"  # domain-specific channel-wise + shared point-wise
    SHARED = "shared"  # one standard convolution for all domains
    PER_DOMAIN = "per_domain"  # one standard convolution per domain


def block_factory(kind: BlockKind, config: ModelConfig) -> BlockFactory:
    """Return a ``(in_channels, out_channels) -> block`` constructor."""
    slope = config.leaky_slope
    ids = config.domain_ids
    if kind is BlockKind.SEPARABLE:
        return lambda n, m: SeparableConv2d(n, m, ids, slope)
    if kind is BlockKind.SHARED:
        return lambda n, m: ConvBlock(n, m, ids, slope)
    return lambda n, m: DomainConvBlock(n, m, ids, slope)


class DoubleConv(nn.Module):
    """Two consecutive blocks, the unit of every U-Net level."""

    def __init__(self, in_channels: int, out_channels: int, factory: BlockFactory):
        super().__init__()
        self.conv1 = factory(in_channels, out_channels)
        self.conv2 = factory(out_channels, out_channels)

    def forward(self, x: torch.Tensor, domain_index: int) -> torch.Tensor:
        return self.conv2(self.conv1(x, domain_index), domain_index)


class UNetBackbone(nn.Module):
    """
    Encoder/decoder with skip connections.

    The encoder halves the resolution per level with max pooling; the decoder
    upsamples bilinearly by 2, concatenates the matching skip and applies a
    DoubleConv. Output has ``widths[0]`` channels at input resolution.
    """

    def __init__(self, in_channels: int, widths: list[int], factory: BlockFactory):
        super().__init__()
        self.divisor = 2 ** (len(widths) - 1)
        self.encoders = nn.ModuleList()
        previous = in_channels
        for width in widths:
            self.encoders.append(DoubleConv(previous, width, factory))
            previous = width
        self.decoders = nn.ModuleList(
            DoubleConv(widths[level + 1] + widths[level], widths[level], factory)
            for level in reversed(range(len(widths) - 1))
        )
        self.pool = nn.MaxPool2d(2)
        self.out_channels = widths[0]

    def forward(self, x: torch.Tensor, domain_index: int) -> torch.Tensor:
        height, width = x.shape[-2:]
        if height % self.divisor or width % self.divisor:
            raise ContractViolation(
                f"Input size {height}x{width} must be divisible by {self.divisor} "
                f"(2^(depth-1))"
            )

        skips: list[torch.Tensor] = []
        for level, encoder in enumerate(self.encoders):
            if level:
                x = self.pool(x)
            x = encoder(x, domain_index)
            skips.append(x)

        skips.pop()
        for decoder in self.decoders:
            skip = skips.pop()
            x = F.interpolate(x, size=skip.shape[-2:], mode="bilinear", align_corners=False)
            x = decoder(torch.cat([skip, x], dim=1), domain_index)
        return x


class UNetHeatmapNet(nn.Module):
    """
    U-Net with per-domain output heads, squashed to (0, 1).

    With ``BlockKind.SEPARABLE`` this is the local network; the other block kinds
    give the plain and triplicated U-Net baselines.
    """

    def __init__(self, config: ModelConfig, kind: BlockKind = BlockKind.SEPARABLE):
        super().__init__()
        self.kind = kind
        self.in_channels = config.in_channels
        self.backbone = UNetBackbone(config.in_channels, config.widths, block_factory(kind, config))
        self.heads = OutputHeads(
            self.backbone.out_channels, {d.domain_id: d.num_landmarks for d in config.domains}
        )

    def forward(self, x: torch.Tensor, domain_index: int) -> torch.Tensor:
        if x.dim() != 4 or x.shape[1] != self.in_channels:
            raise ContractViolation(
                f"Expected image batch [B, {self.in_channels}, H, W], got {tuple(x.shape)}"
            )
        head = self.heads.select(domain_index)
        return torch.sigmoid(head(self.backbone(x, domain_index)))


class DilatedStack(nn.Module):
    """3x3 convolutions with growing-then-shrinking dilation; the last maps to C' logits."""

    def __init__(
        self,
        in_channels: int,
        out_channels: int,
        width: int,
        dilations: list[int],
        leaky_slope: float,
    ):
        super().__init__()
        self.dilations = list(dilations)
        layers: list[nn.Module] = []
        previous = in_channels
        for position, dilation in enumerate(dilations):
            last = position == len(dilations) - 1
            target = out_channels if last else width
            layers.append(
                nn.Conv2d(previous, target, kernel_size=3, padding=dilation, dilation=dilation)
            )
            if not last:
                layers += [nn.BatchNorm2d(target), nn.LeakyReLU(leaky_slope)]
            previous = target
        self.layers = nn.Sequential(*layers)

    @property
    def receptive_field(self) -> int:
        """Receptive field in pixels of the stack's own input grid."""
        return 1 + 2 * sum(self.dilations)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.layers(x)


class GlobalNetwork(nn.Module):
    """
    Per-domain dilated network at reduced resolution.

    Average-pools the image (and, when ``with_local``, the local heatmap) by
    ``global_downsample``, runs the domain's dilated stack, upsamples the logits
    bilinearly back to input size and squashes them to (0, 1).
    """

    def __init__(self, config: ModelConfig, with_local: bool = True):
        super().__init__()
        self.with_local = with_local
        self.downsample = config.global_downsample
        self.in_channels = config.in_channels
        self.nets = DomainBank(
            {
                d.domain_id: DilatedStack(
                    config.in_channels + (d.num_landmarks if with_local else 0),
                    d.num_landmarks,
                    config.global_channels,
                    config.dilations,
                    config.leaky_slope,
                )
                for d in config.domains
            }
        )
        self.pool = nn.AvgPool2d(self.downsample)

    @property
    def receptive_field(self) -> int:
        """Receptive field measured in input pixels."""
        first = next(iter(self.nets.values()))
        return first.receptive_field * self.downsample

    def forward(
        self,
        image: torch.Tensor,
        local_heatmap: torch.Tensor | None,
        domain_index: int,
    ) -> torch.Tensor:
        height, width = image.shape[-2:]
        if height % self.downsample or width % self.downsample:
            raise ContractViolation(
                f"Input size {height}x{width} must be divisible by {self.downsample}"
            )
        if image.dim() != 4 or image.shape[1] != self.in_channels:
            raise ContractViolation(
                f"Expected image batch [B, {self.in_channels}, H, W], got {tuple(image.shape)}"
            )
        stack = self.nets.select(domain_index)

        x = self.pool(image)
        if self.with_local:
            if local_heatmap is None:
                raise ContractViolation("This global network needs the local heatmap as input")
            if local_heatmap.shape[0] != image.shape[0] or local_heatmap.shape[-2:] != image.shape[-2:]:
                raise ContractViolation(
                    f"Local heatmap {tuple(local_heatmap.shape)} does not match image "
                    f"{tuple(image.shape)}"
                )
            x = torch.cat([x, self.pool(local_heatmap)], dim=1)

        logits = F.interpolate(stack(x), size=(height, width), mode="bilinear", align_corners=False)
        return torch.sigmoid(logits)


def fuse(local_heatmap: torch.Tensor, global_heatmap: torch.Tensor) -> torch.Tensor:
    """
    Pixel-wise product of the global and local heatmaps.

    Raises:
        ContractViolation: If the shapes differ
    """
    if local_heatmap.shape != global_heatmap.shape:
        raise ContractViolation(
            f"Cannot fuse heatmaps of shapes {tuple(local_heatmap.shape)} and "
            f"{tuple(global_heatmap.shape)}"
        )
    return global_heatmap * local_heatmap


__all__ = [
    "BlockKind",
    "DilatedStack",
    "GlobalNetwork",
    "UNetBackbone",
    "UNetHeatmapNet",
    "fuse",
]
