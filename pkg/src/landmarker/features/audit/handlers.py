"""``audit-params`` subcommand: parameter accounting table for every variant."""

import argparse
import logging
from pathlib import Path

from src.landmarker.features.arguments import add_manifest_argument
from src.landmarker.features.train.validators import resolve_run_config
from src.landmarker.services.data.manifest import load_manifests
from src.landmarker.services.data.presets import preset_domains
from src.landmarker.services.data.schemas import DomainSpec
from src.landmarker.services.models.exceptions import ParameterAuditError
from src.landmarker.services.models.params import audit_parameters
from src.landmarker.services.models.schemas import ArchitectureConfig, ModelConfig, ParameterAudit

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "audit-params", help="Count parameters per variant and verify the accounting"
    )
    parser.add_argument("--config", type=Path, help="Run config JSON; its model section is used")
    add_manifest_argument(parser)
    parser.add_argument("--depth", type=int)
    parser.add_argument("--base-channels", type=int)
    parser.set_defaults(handler=cmd_audit_params)


def _millions(count: int) -> str:
    return f"{count / 1e6:.2f}M"


def format_audit(audit: ParameterAudit) -> str:
    """Aligned table: variant, total, domain-specific, shared, kernel weights, type."""
    header = ["variant", "total", "theta_d", "theta_s", "conv_weights", "type"]
    rows = [
        [
            c.variant.value,
            _millions(c.total),
            _millions(c.domain_specific),
            _millions(c.shared),
            str(c.conv_weights),
            c.parameter_type,
        ]
        for c in audit.counts
    ]
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    lines = [
        "  ".join(cell.ljust(w) for cell, w in zip(r, widths, strict=True)).rstrip()
        for r in [header, *rows]
    ]
    blocks = sum(len(c.blocks) for c in audit.counts)
    lines.append(
        f"{audit.num_domains} domain(s); {blocks} separable blocks checked against 9NT+NM; "
        f"global receptive field {audit.receptive_field} px"
    )
    return "\n".join(lines) + "\n"


def resolve_model_config(args: argparse.Namespace) -> ModelConfig:
    """Domains from manifests (or the head/hand/chest presets), architecture from config and flags."""
    architecture = ArchitectureConfig()
    manifest_paths: list[Path] = list(args.manifests or [])
    if args.config is not None:
        run_config = resolve_run_config(args.config, {})
        architecture = run_config.model
        manifest_paths = manifest_paths or run_config.manifests

    overrides = {"depth": args.depth, "base_channels": args.base_channels}
    architecture = ArchitectureConfig.model_validate(
        {**architecture.model_dump(), **{k: v for k, v in overrides.items() if v is not None}}
    )
    domains: list[DomainSpec] = (
        [m.domain for m in load_manifests(manifest_paths, check_landmarks=False)]
        if manifest_paths
        else preset_domains()
    )
    return ModelConfig(domains=domains, **architecture.model_dump())


def cmd_audit_params(args: argparse.Namespace) -> int:
    """
    Print the accounting table.

    Returns:
        Exit code 0 when every check passes

    Raises:
        ParameterAuditError: Naming every failed check
    """
    audit = audit_parameters(resolve_model_config(args))
    logger.info(
        f"Audited {len(audit.counts)} variants",
        extra={"domains": audit.num_domains, "violations": len(audit.violations)},
    )
    print(format_audit(audit), end="")
    if not audit.ok:
        raise ParameterAuditError("; ".join(audit.violations))
    print("All parameter checks passed")
    return 0
