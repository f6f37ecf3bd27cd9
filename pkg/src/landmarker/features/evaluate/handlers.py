"""``evaluate`` subcommand: per-domain MRE/SDR reports plus the mixed-set aggregate."""

import argparse
import json
import logging
from pathlib import Path

from src.landmarker.config import settings
from src.landmarker.exceptions import ConfigError
from src.landmarker.features.arguments import add_manifest_argument, float_list
from src.landmarker.services.data.manifest import load_manifests
from src.landmarker.services.data.schemas import DatasetManifest, DatasetSplit
from src.landmarker.services.metrics.evaluate import (
    ModelPredictor,
    OraclePredictor,
    Predictor,
    evaluate_domains,
)
from src.landmarker.services.metrics.report import (
    PER_LANDMARK_CSV,
    format_table,
    write_per_landmark_csv,
    write_report,
)
from src.landmarker.services.models.checkpoint import load_checkpoint
from src.landmarker.services.models.exceptions import DomainMismatchError
from src.landmarker.services.models.schemas import ModelConfig
from src.landmarker.services.models.variants import LandmarkModel

logger = logging.getLogger(__name__)

DEFAULT_SIGMA = 3.0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("evaluate", help="Evaluate a checkpoint on test splits")
    parser.add_argument("--checkpoint", type=Path, help="Checkpoint file (best.ckpt)")
    add_manifest_argument(parser)
    parser.add_argument("--sdr", type=float_list, help="SDR thresholds, e.g. 2,4 (all domains)")
    parser.add_argument("--split", choices=[s.value for s in DatasetSplit], default="test")
    parser.add_argument("--out", type=Path, help="Report directory (default: <run>/eval)")
    parser.add_argument(
        "--oracle", action="store_true", help="Use encoded targets as predictions"
    )
    parser.add_argument(
        "--per-landmark-csv", action="store_true", help=f"Also write {PER_LANDMARK_CSV}"
    )
    parser.add_argument("--batch-size", type=int, default=4)
    parser.set_defaults(handler=cmd_evaluate)


def manifests_from_run(checkpoint: Path) -> list[Path]:
    """Manifest paths recorded in the run's config.json, if there is one."""
    config_path = checkpoint.parent / settings.config_file
    if not config_path.is_file():
        return []
    document = json.loads(config_path.read_text(encoding="utf-8"))
    return [Path(p) for p in document.get("manifests", [])]


def match_domains(config: ModelConfig, manifests: list[DatasetManifest]) -> list[int]:
    """
    Model domain index for every manifest.

    Raises:
        DomainMismatchError: If a manifest's domain is unknown to the model or
            declares a different landmark count
    """
    indices = []
    for manifest in manifests:
        domain = manifest.domain
        if domain.domain_id not in config.domain_ids:
            raise DomainMismatchError(
                f"Checkpoint has no domain '{domain.domain_id}'. Known: {config.domain_ids}"
            )
        index = config.domain_index(domain.domain_id)
        expected = config.domains[index].num_landmarks
        if expected != domain.num_landmarks:
            raise DomainMismatchError(
                f"Domain '{domain.domain_id}': checkpoint expects {expected} landmarks, "
                f"manifest declares {domain.num_landmarks}"
            )
        indices.append(index)
    return indices


def cmd_evaluate(args: argparse.Namespace) -> int:
    """
    Evaluate a checkpoint (or the oracle) and write report.json and report.txt.

    Returns:
        Exit code 0 on success
    """
    if args.checkpoint is None and not args.oracle:
        raise ConfigError("--checkpoint is required unless --oracle is given")

    manifest_paths = args.manifests or (manifests_from_run(args.checkpoint) if args.checkpoint else [])
    if not manifest_paths:
        raise ConfigError("No manifests given and none recorded next to the checkpoint")
    manifests = load_manifests(manifest_paths)

    model: LandmarkModel | None = None
    sigma = DEFAULT_SIGMA
    indices: list[int] | None = None
    if args.checkpoint is not None:
        model, _ = load_checkpoint(args.checkpoint)
        sigma = model.config.sigma
        indices = match_domains(model.config, manifests)

    predictor: Predictor = OraclePredictor() if args.oracle or model is None else ModelPredictor(model)
    report, evaluations = evaluate_domains(
        predictor,
        manifests,
        sigma=sigma,
        split=DatasetSplit(args.split),
        thresholds=args.sdr,
        domain_indices=indices,
        batch_size=args.batch_size,
    )
    if args.checkpoint is not None:
        report.checkpoint = str(args.checkpoint)
        report.variant = model.variant.value if model is not None else None
    if args.oracle:
        report.variant = "oracle"

    out_dir = args.out or ((args.checkpoint.parent / "eval") if args.checkpoint else Path("eval"))
    json_path, _ = write_report(out_dir, report)
    logger.info(
        f"Wrote evaluation report {json_path}",
        extra={"split": args.split, "variant": report.variant, "domains": len(report.domains)},
    )
    if args.per_landmark_csv:
        write_per_landmark_csv(out_dir / PER_LANDMARK_CSV, evaluations)

    print(format_table(report), end="")
    print(f"Report written to {json_path}")
    return 0
