"""Exact enumeration of learnable parameters."""

import logging

from torch import nn

from src.landmarker.services.models.blocks import DomainBank, OutputHeads, SeparableConv2d
from src.landmarker.services.models.networks import GlobalNetwork
from src.landmarker.services.models.schemas import (
    BlockAudit,
    ModelConfig,
    ParamCount,
    ParameterAudit,
    VariantKind,
)
from src.landmarker.services.models.variants import LandmarkModel, build_variant

logger = logging.getLogger(__name__)


def _param_ids(modules: list[nn.Module]) -> set[int]:
    return {id(p) for module in modules for p in module.parameters()}


def count_params(model: LandmarkModel) -> ParamCount:
    """
    Count learnable scalars and split them into domain-specific and shared.

    Domain-specific parameters are exactly those living in a ``DomainBank``
    (channel-wise filters, global networks, output heads, per-domain copies);
    everything else is shared. Convolution kernel counts exclude the output heads.

    Args:
        model: A built model variant

    Returns:
        ParamCount with one BlockAudit per separable block
    """
    params = {id(p): p for p in model.parameters() if p.requires_grad}
    modules = list(model.modules())

    domain_ids = _param_ids([m for m in modules if isinstance(m, DomainBank)])
    head_ids = _param_ids([m for m in modules if isinstance(m, OutputHeads)])

    total = sum(p.numel() for p in params.values())
    domain_specific = sum(p.numel() for key, p in params.items() if key in domain_ids)

    conv_weights = 0
    head_weights = 0
    for module in modules:
        if not isinstance(module, nn.Conv2d):
            continue
        if id(module.weight) in head_ids:
            head_weights += module.weight.numel()
        else:
            conv_weights += module.weight.numel()

    blocks = [
        BlockAudit(
            name=name,
            in_channels=module.in_channels,
            out_channels=module.out_channels,
            num_domains=module.num_domains,
            conv_weights=module.conv_weight_count,
            expected=module.expected_conv_weights,
        )
        for name, module in model.named_modules()
        if isinstance(module, SeparableConv2d)
    ]

    return ParamCount(
        variant=model.variant,
        total=total,
        domain_specific=domain_specific,
        shared=total - domain_specific,
        conv_weights=conv_weights,
        head_weights=head_weights,
        head_params=sum(p.numel() for key, p in params.items() if key in head_ids),
        blocks=blocks,
    )


def audit_parameters(config: ModelConfig) -> ParameterAudit:
    """
    Count parameters of every variant and check the accounting invariants.

    Checked: every separable block holds exactly ``9*N*T + N*M`` kernel weights;
    GU2Net < U-Net in total parameters; with T > 1 domains U-Net < Tri-UNet and
    Tri-UNet's kernel weights are exactly T times the U-Net's (T = 1: equal).

    Returns:
        ParameterAudit; ``violations`` names each failed check
    """
    counts = {kind: count_params(build_variant(kind, config)) for kind in VariantKind}
    violations = [
        f"{kind.value}: block {block.name} has {block.conv_weights} kernel weights, "
        f"9NT+NM = {block.expected}"
        for kind, count in counts.items()
        for block in count.blocks
        if not block.ok
    ]

    t = config.num_domains
    gu2net, unet, tri = (counts[k] for k in (VariantKind.GU2NET, VariantKind.UNET, VariantKind.TRI_UNET))
    if not gu2net.total < unet.total:
        violations.append(f"expected gu2net ({gu2net.total}) < unet ({unet.total})")
    if t > 1 and not unet.total < tri.total:
        violations.append(f"expected unet ({unet.total}) < tri_unet ({tri.total})")
    if tri.conv_weights != t * unet.conv_weights:
        violations.append(
            f"expected tri_unet kernel weights ({tri.conv_weights}) = {t} x unet ({unet.conv_weights})"
        )

    for message in violations:
        logger.error(message)
    return ParameterAudit(
        num_domains=t,
        counts=list(counts.values()),
        receptive_field=GlobalNetwork(config).receptive_field,
        violations=violations,
    )
