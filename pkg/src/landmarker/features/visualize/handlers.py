"""``visualize`` subcommand: overlay predicted and ground-truth landmarks on an image."""

import argparse
import logging
from pathlib import Path

from src.landmarker.features.visualize.overlay import render_overlay
from src.landmarker.services.data.imaging import load_image, read_points_csv

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("visualize", help="Render a landmark overlay")
    parser.add_argument("--image", type=Path, required=True)
    parser.add_argument("--pred", type=Path, required=True, help="Predicted landmarks CSV")
    parser.add_argument("--truth", type=Path, help="Ground-truth landmarks CSV")
    parser.add_argument("--out", type=Path, default=Path("overlay.png"))
    parser.set_defaults(handler=cmd_visualize)


def cmd_visualize(args: argparse.Namespace) -> int:
    """
    Write the overlay PNG.

    Returns:
        Exit code 0 on success
    """
    image = load_image(args.image)
    predicted = read_points_csv(args.pred)
    truth = read_points_csv(args.truth) if args.truth else None

    overlay = render_overlay(image, predicted, truth)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    overlay.image.save(args.out, format="PNG")
    logger.info(f"Rendered overlay {args.out}", extra={"landmarks": overlay.markers, "mre": overlay.mre})

    summary = f"MRE {overlay.mre:.2f} px" if overlay.mre is not None else "no ground truth"
    print(f"Wrote overlay with {overlay.markers} markers to {args.out} ({summary})")
    return 0
