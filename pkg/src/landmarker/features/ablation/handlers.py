"""``ablation`` subcommand: train or collect several variants and compare them on the mixed set."""

import argparse
import logging
from collections.abc import Sequence
from pathlib import Path

from src.landmarker.config import settings
from src.landmarker.exceptions import ConfigError
from src.landmarker.features.ablation.schemas import AblationReport, AblationRow
from src.landmarker.features.arguments import add_manifest_argument
from src.landmarker.features.evaluate.handlers import manifests_from_run, match_domains
from src.landmarker.features.train.handlers import run_training
from src.landmarker.features.train.validators import RunConfig, resolve_run_config
from src.landmarker.services.data.manifest import load_manifests
from src.landmarker.services.data.schemas import DatasetSplit
from src.landmarker.services.metrics.evaluate import ModelPredictor, evaluate_domains
from src.landmarker.services.models.checkpoint import load_checkpoint
from src.landmarker.services.models.params import count_params
from src.landmarker.services.models.schemas import VariantKind

logger = logging.getLogger(__name__)

ABLATION_JSON = "ablation.json"
ABLATION_TABLE = "ablation.txt"
DEFAULT_OUT = Path("runs/ablation")


def variant_list(value: str) -> list[VariantKind]:
    """Parse ``"gu2net,unet"`` into variant kinds."""
    try:
        kinds = [VariantKind(part.strip()) for part in value.split(",") if part.strip()]
    except ValueError:
        known = ", ".join(v.value for v in VariantKind)
        raise argparse.ArgumentTypeError(f"unknown variant in '{value}'; known: {known}") from None
    if not kinds:
        raise argparse.ArgumentTypeError("list must not be empty")
    return kinds


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "ablation", help="Compare variants: parameters, MRE and SDR on the mixed set"
    )
    parser.add_argument(
        "--run",
        dest="runs",
        action="append",
        type=Path,
        help="Existing run directory or checkpoint to collect; repeat per variant",
    )
    parser.add_argument("--config", type=Path, help="Run config JSON shared by every trained variant")
    add_manifest_argument(parser)
    parser.add_argument(
        "--variants",
        type=variant_list,
        default=list(VariantKind),
        help="Variants to train, e.g. gu2net,unet (default: all)",
    )
    parser.add_argument("--epochs", type=int)
    parser.add_argument("--batch-size", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--split", choices=[s.value for s in DatasetSplit], default="test")
    parser.add_argument("--out", type=Path, help=f"Output directory (default: {DEFAULT_OUT})")
    parser.set_defaults(handler=cmd_ablation)


def train_variants(base: RunConfig, variants: Sequence[VariantKind], out_dir: Path) -> list[Path]:
    """Train each variant with the same data and settings into ``<out_dir>/<variant>``."""
    checkpoints = []
    for variant in variants:
        run_dir = out_dir / variant.value
        logger.info("Training ablation variant", extra={"variant": variant.value, "run_dir": str(run_dir)})
        result = run_training(base.model_copy(update={"variant": variant, "out": run_dir}))
        checkpoints.append(result.best_checkpoint)
    return checkpoints


def checkpoint_of(run: Path) -> Path:
    """The best checkpoint of a run directory, or the path itself if it is a file."""
    return run if run.is_file() else run / settings.checkpoint_name_best


def ablation_row(
    checkpoint: Path,
    manifest_paths: Sequence[Path] | None = None,
    *,
    split: DatasetSplit = DatasetSplit.TEST,
    batch_size: int = 4,
) -> tuple[AblationRow, list[str]]:
    """
    Count parameters and evaluate one checkpoint on the mixed set.

    Returns:
        The table row and the evaluated domain ids, in order

    Raises:
        ConfigError: If no manifests are given or recorded next to the checkpoint
    """
    model, _ = load_checkpoint(checkpoint)
    paths = list(manifest_paths or manifests_from_run(checkpoint))
    if not paths:
        raise ConfigError(f"No manifests given and none recorded next to {checkpoint}")
    manifests = load_manifests(paths)
    report, _ = evaluate_domains(
        ModelPredictor(model),
        manifests,
        sigma=model.config.sigma,
        split=split,
        domain_indices=match_domains(model.config, manifests),
        batch_size=batch_size,
    )
    assert report.aggregate is not None
    count = count_params(model)
    row = AblationRow(
        variant=model.variant,
        checkpoint=checkpoint,
        params=count.total,
        parameter_type=count.backbone_type,
        aggregate=report.aggregate,
    )
    return row, [m.domain.domain_id for m in manifests]


def build_report(
    checkpoints: Sequence[Path],
    manifest_paths: Sequence[Path] | None = None,
    *,
    split: DatasetSplit = DatasetSplit.TEST,
    batch_size: int = 4,
) -> AblationReport:
    """
    Evaluate every checkpoint on the same domains.

    Raises:
        ConfigError: If two checkpoints were evaluated on different domain lists
    """
    rows = []
    domains: list[str] | None = None
    for checkpoint in checkpoints:
        row, evaluated = ablation_row(checkpoint, manifest_paths, split=split, batch_size=batch_size)
        if domains is not None and evaluated != domains:
            raise ConfigError(
                f"{checkpoint} was evaluated on {evaluated}, earlier runs on {domains}; "
                "pass --manifest to compare on the same domains"
            )
        domains = evaluated
        rows.append(row)
    return AblationReport(split=split.value, domains=domains or [], rows=rows)


def format_ablation(report: AblationReport) -> str:
    """
    Aligned comparison table in resized pixels.

    Example:
        variant  params     type             MRE±STD    2px     4px     6px
        gu2net   4,440,000  theta_d,theta_s  1.14±1.57  91.40   97.20   98.80
    """
    thresholds = list(report.rows[0].aggregate.sdr)
    header = ["variant", "params", "type", "MRE±STD", *(f"{t:g}px" for t in thresholds)]
    rows = [
        [
            row.variant.value,
            f"{row.params:,}",
            row.parameter_type,
            f"{row.aggregate.mre:.2f}±{row.aggregate.std:.2f}",
            *(f"{row.aggregate.sdr.get(t, float('nan')):.2f}" for t in thresholds),
        ]
        for row in report.rows
    ]
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    lines = [
        "  ".join(cell.ljust(w) for cell, w in zip(r, widths, strict=True)).rstrip()
        for r in [header, *rows]
    ]
    lines.append(f"mixed set of {', '.join(report.domains)} ({report.split} split), SDR in %")
    return "\n".join(lines) + "\n"


def write_ablation(out_dir: Path, report: AblationReport) -> tuple[Path, Path]:
    """Write ``ablation.json`` and ``ablation.txt``; returns both paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / ABLATION_JSON
    table_path = out_dir / ABLATION_TABLE
    json_path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    table_path.write_text(format_ablation(report), encoding="utf-8")
    return json_path, table_path


def cmd_ablation(args: argparse.Namespace) -> int:
    """
    Collect ``--run`` directories, or train ``--variants`` from a shared run config first.

    Returns:
        Exit code 0 on success
    """
    out_dir: Path = args.out or DEFAULT_OUT
    split = DatasetSplit(args.split)

    if args.runs:
        checkpoints = [checkpoint_of(run) for run in args.runs]
        manifest_paths = args.manifests
    elif args.config is not None or args.manifests:
        base = resolve_run_config(
            args.config,
            {
                "manifests": [str(p.resolve()) for p in args.manifests] if args.manifests else None,
                "train.epochs": args.epochs,
                "train.batch_size": args.batch_size,
                "train.seed": args.seed,
            },
        )
        checkpoints = train_variants(base, args.variants, out_dir)
        manifest_paths = None
    else:
        raise ConfigError("Give --run directories to collect, or --config/--manifest to train")

    report = build_report(checkpoints, manifest_paths, split=split)
    json_path, _ = write_ablation(out_dir, report)
    logger.info("Ablation finished", extra={"variants": len(report.rows), "path": str(json_path)})

    print(format_ablation(report), end="")
    print(f"Report written to {json_path}")
    return 0
