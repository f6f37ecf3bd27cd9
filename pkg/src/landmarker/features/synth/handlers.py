"""``synth`` subcommand: generate toy datasets with standard manifests."""

import argparse
import logging
from pathlib import Path

from src.landmarker.config import settings
from src.landmarker.features.arguments import int_list
from src.landmarker.services.data.schemas import SynthConfig
from src.landmarker.services.data.synth import generate_synthetic_corpus

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("synth", help="Generate a synthetic multi-domain corpus")
    parser.add_argument("--out", type=Path, default=Path("data/synth"))
    parser.add_argument("--domains", type=int, default=2)
    parser.add_argument("--images", type=int, default=8, help="Images per domain")
    parser.add_argument(
        "--landmarks", type=int_list, default=[3, 5], help="Landmarks per domain, e.g. 3,5"
    )
    parser.add_argument("--size", type=int, default=64, help="Square image size in pixels")
    parser.add_argument("--test-count", type=int, default=2, help="Test images per domain")
    parser.add_argument("--seed", type=int, default=settings.default_seed)
    parser.set_defaults(handler=cmd_synth)


def cmd_synth(args: argparse.Namespace) -> int:
    """
    Generate ``--domains`` datasets under ``--out``.

    Returns:
        Exit code 0 on success
    """
    config = SynthConfig(
        num_domains=args.domains,
        images_per_domain=args.images,
        landmarks_per_domain=args.landmarks,
        size=args.size,
        seed=args.seed,
        test_count=args.test_count,
    )
    paths = generate_synthetic_corpus(config, args.out)
    logger.info(
        f"Generated {len(paths)} synthetic domain(s) under {args.out}",
        extra={"images": config.images_per_domain, "landmarks": config.landmarks_per_domain},
    )
    for path in paths:
        print(path)
    return 0
