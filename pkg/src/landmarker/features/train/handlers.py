"""``train`` subcommand: fit one variant on the mixture of all listed domains."""

import argparse
import logging
from pathlib import Path

from src.landmarker.features.arguments import add_manifest_argument
from src.landmarker.features.train.validators import RunConfig, resolve_run_config
from src.landmarker.services.data.manifest import load_manifests
from src.landmarker.services.models.schemas import ModelConfig, VariantKind
from src.landmarker.services.models.variants import build_variant
from src.landmarker.services.seeding import seed_torch
from src.landmarker.services.training.schemas import TrainResult
from src.landmarker.services.training.trainer import train

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("train", help="Train a model on one or more datasets")
    parser.add_argument("--config", type=Path, help="Run config JSON (RunConfig document)")
    add_manifest_argument(parser)
    parser.add_argument("--variant", choices=[v.value for v in VariantKind])
    parser.add_argument("--epochs", type=int)
    parser.add_argument("--batch-size", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", type=Path, help="Run directory")
    parser.set_defaults(handler=cmd_train)


def run_training(run_config: RunConfig) -> TrainResult:
    """Load data, build the variant and train it as the run config describes."""
    manifests = load_manifests(run_config.manifests)
    seed_torch(run_config.train.seed)
    model_config = ModelConfig(
        domains=[m.domain for m in manifests], **run_config.model.model_dump()
    )
    model = build_variant(run_config.variant, model_config)
    return train(model, manifests, run_config.train, run_config.out, run_document=run_config)


def cmd_train(args: argparse.Namespace) -> int:
    """
    Train from a run config plus flag overrides.

    Flags take precedence over the config file; the merged document is written
    to ``<out>/config.json``.

    Returns:
        Exit code 0 on success
    """
    run_config = resolve_run_config(
        args.config,
        {
            "variant": args.variant,
            "manifests": [str(p.resolve()) for p in args.manifests] if args.manifests else None,
            "out": str(args.out) if args.out else None,
            "train.epochs": args.epochs,
            "train.batch_size": args.batch_size,
            "train.seed": args.seed,
        },
    )
    logger.info(
        f"Training {run_config.variant.value} on {len(run_config.manifests)} domain(s)",
        extra={"run_dir": str(run_config.out), "epoch": run_config.train.epochs},
    )
    result = run_training(run_config)
    logger.info(
        f"Finished training {run_config.variant.value}",
        extra={"epoch": result.best_epoch, "val_loss": result.best_val_loss},
    )
    print(
        f"Trained {run_config.variant.value} for {result.epochs_run} epochs; "
        f"best epoch {result.best_epoch} (val loss {result.best_val_loss:.4f})"
    )
    print(f"Run directory: {result.run_dir}")
    return 0
