"""Convolution blocks that take a domain index alongside their input.

Every block maps ``[B, N, H, W] -> [B, M, H, W]`` and follows its convolution
with batch normalisation and a leaky ReLU.
"""

from collections.abc import Callable, Mapping, Sequence

import torch
from torch import nn

from src.landmarker.exceptions import ContractViolation
from src.landmarker.services.models.exceptions import DomainIndexError


class DomainBank(nn.ModuleDict):
    """
    Per-domain modules keyed by domain id.

    Everything registered inside a bank is a domain-specific parameter; parameter
    accounting relies on this type to tell domain-specific from shared weights.
    """

    def __init__(self, modules: Mapping[str, nn.Module]):
        super().__init__(dict(modules))
        self.domain_ids = list(modules.keys())

    def select(self, domain_index: int) -> nn.Module:
        """Return the module of one domain."""
        if not 0 <= domain_index < len(self.domain_ids):
            raise DomainIndexError(domain_index, len(self.domain_ids))
        return self[self.domain_ids[domain_index]]


class OutputHeads(DomainBank):
    """Per-domain 1x1 convolutions mapping features to each domain's landmark count."""

    def __init__(self, in_channels: int, landmarks_per_domain: Mapping[str, int]):
        super().__init__(
            {
                domain_id: nn.Conv2d(in_channels, count, kernel_size=1)
                for domain_id, count in landmarks_per_domain.items()
            }
        )


class DomainBatchNorm(nn.Module):
    """
    Batch normalisation with a shared affine transform and per-domain running statistics.

    Each domain reaches a shared layer through its own filters, so its activation
    statistics differ from the other domains'. The statistics buffers live in a
    ``DomainBank`` (no learnable scalars); scale and shift are shared parameters.
    """

    def __init__(self, channels: int, domain_ids: Sequence[str], eps: float = 1e-5):
        super().__init__()
        self.stats = DomainBank(
            {domain_id: nn.BatchNorm2d(channels, eps=eps, affine=False) for domain_id in domain_ids}
        )
        self.weight = nn.Parameter(torch.ones(channels))
        self.bias = nn.Parameter(torch.zeros(channels))

    def forward(self, x: torch.Tensor, domain_index: int) -> torch.Tensor:
        normalised = self.stats.select(domain_index)(x)
        return normalised * self.weight.view(1, -1, 1, 1) + self.bias.view(1, -1, 1, 1)


BlockFactory = Callable[[int, int], nn.Module]


def _check_channels(x: torch.Tensor, expected: int) -> None:
    if x.dim() != 4 or x.shape[1] != expected:
        raise ContractViolation(
            f"Expected input of shape [B, {expected}, H, W], got {tuple(x.shape)}"
        )


class SeparableConv2d(nn.Module):
    """
    Separable convolution with domain-specific channel-wise and shared point-wise filters.

    Each domain owns N channel-wise 3x3 filters (one per input channel); all
    domains share M point-wise 1x1 filters over N channels. Kernel weights total
    ``9*N*T + N*M`` for T domains. The point-wise bias and the normalisation
    layer's scale and shift are shared; its running statistics are kept per domain.
    """

    def __init__(
        self,
        in_channels: int,
        out_channels: int,
        domain_ids: list[str],
        leaky_slope: float = 0.01,
    ):
        super().__init__()
        self.in_channels = in_channels
        self.out_channels = out_channels
        self.channel_wise = DomainBank(
            {
                domain_id: nn.Conv2d(
                    in_channels, in_channels, kernel_size=3, padding=1, groups=in_channels, bias=False
                )
                for domain_id in domain_ids
            }
        )
        self.point_wise = nn.Conv2d(in_channels, out_channels, kernel_size=1)
        self.norm = DomainBatchNorm(out_channels, domain_ids)
        self.act = nn.LeakyReLU(leaky_slope)

    @property
    def num_domains(self) -> int:
        return len(self.channel_wise.domain_ids)

    @property
    def conv_weight_count(self) -> int:
        """Kernel scalars actually allocated by this block."""
        depthwise = sum(conv.weight.numel() for conv in self.channel_wise.values())
        return depthwise + self.point_wise.weight.numel()

    @property
    def expected_conv_weights(self) -> int:
        """``9*N*T + N*M``."""
        n, m, t = self.in_channels, self.out_channels, self.num_domains
        return 9 * n * t + n * m

    def forward(self, x: torch.Tensor, domain_index: int) -> torch.Tensor:
        _check_channels(x, self.in_channels)
        channel_wise = self.channel_wise.select(domain_index)
        return self.act(self.norm(self.point_wise(channel_wise(x)), domain_index))


class ConvBlock(nn.Module):
    """Standard 3x3 convolution shared by all domains; only normalisation statistics are per domain."""

    def __init__(
        self,
        in_channels: int,
        out_channels: int,
        domain_ids: Sequence[str] = ("shared",),
        leaky_slope: float = 0.01,
    ):
        super().__init__()
        self.in_channels = in_channels
        self.conv = nn.Conv2d(in_channels, out_channels, kernel_size=3, padding=1)
        self.norm = DomainBatchNorm(out_channels, domain_ids)
        self.act = nn.LeakyReLU(leaky_slope)

    def forward(self, x: torch.Tensor, domain_index: int = 0) -> torch.Tensor:
        _check_channels(x, self.in_channels)
        return self.act(self.norm(self.conv(x), domain_index))


class DomainConvBlock(nn.Module):
    """One full copy of a standard convolution block per domain."""

    def __init__(
        self,
        in_channels: int,
        out_channels: int,
        domain_ids: list[str],
        leaky_slope: float = 0.01,
    ):
        super().__init__()
        self.copies = DomainBank(
            {
                domain_id: ConvBlock(in_channels, out_channels, [domain_id], leaky_slope)
                for domain_id in domain_ids
            }
        )

    def forward(self, x: torch.Tensor, domain_index: int) -> torch.Tensor:
        return self.copies.select(domain_index)(x)
