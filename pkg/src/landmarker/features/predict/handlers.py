"""``predict`` subcommand: landmarks for one image."""

import argparse
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch

from src.landmarker.config import settings
from src.landmarker.exceptions import ContractViolation
from src.landmarker.services.data.imaging import load_image, write_points_csv
from src.landmarker.services.data.transforms import resize_image
from src.landmarker.services.heatmap.codec import decode_batch
from src.landmarker.services.models.checkpoint import load_checkpoint
from src.landmarker.services.models.variants import BranchOutputs, LandmarkModel

logger = logging.getLogger(__name__)


@dataclass
class Prediction:
    """Native-space landmarks of one image plus the heatmaps they came from."""

    points: np.ndarray  # [K, 2] native pixels
    branches: BranchOutputs


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("predict", help="Predict landmarks for one image")
    parser.add_argument("--checkpoint", type=Path, required=True)
    parser.add_argument("--image", type=Path, required=True)
    parser.add_argument("--domain", required=True, help="Domain id known to the checkpoint")
    parser.add_argument("--out", type=Path, default=Path("predictions"), help="Output directory")
    parser.add_argument(
        "--dump-heatmaps",
        action="store_true",
        help="Also write the fused (and branch) heatmaps as <image>_heatmaps.npz",
    )
    parser.set_defaults(handler=cmd_predict)


@torch.no_grad()
def predict_image(model: LandmarkModel, image: np.ndarray, domain_id: str) -> Prediction:
    """
    Run a model on one native-resolution image.

    Raises:
        UnknownDomainError: If the model was not built for ``domain_id``
        ContractViolation: If the image channel count does not match the domain
    """
    config = model.config
    index = config.domain_index(domain_id)
    domain = config.domains[index]
    if image.shape[0] != domain.in_channels:
        raise ContractViolation(
            f"Domain '{domain_id}' expects {domain.in_channels} channel(s), image has {image.shape[0]}"
        )

    resized, transform = resize_image(image, domain.resize_to)
    device = next(model.parameters()).device
    batch = torch.from_numpy(resized)[None].to(device=device, dtype=next(model.parameters()).dtype)
    model.eval()
    branches = model.forward_branches(batch, index)
    decoded = decode_batch(branches.fused.cpu().numpy())[0]
    return Prediction(points=transform.to_native(decoded), branches=branches)


def dump_heatmaps(path: Path, branches: BranchOutputs) -> Path:
    """Write every available branch as a ``[K, H, W]`` array in one npz archive."""
    arrays = {"fused": branches.fused[0].cpu().numpy()}
    if branches.local is not None:
        arrays["local"] = branches.local[0].cpu().numpy()
    if branches.global_ is not None:
        arrays["global"] = branches.global_[0].cpu().numpy()
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savez_compressed(path, **arrays)
    return path


def cmd_predict(args: argparse.Namespace) -> int:
    """
    Write ``<out>/<image stem>.csv`` with ``index,x,y`` rows in native pixels.

    Returns:
        Exit code 0 on success
    """
    model, _ = load_checkpoint(args.checkpoint, map_location=settings.device)
    prediction = predict_image(model, load_image(args.image), args.domain)
    logger.info(
        f"Predicted landmarks for {args.image}",
        extra={"domain": args.domain, "landmarks": len(prediction.points), "variant": model.variant.value},
    )

    csv_path = args.out / f"{args.image.stem}.csv"
    write_points_csv(csv_path, prediction.points, with_index=True)
    print(f"Wrote {len(prediction.points)} landmarks to {csv_path}")

    if args.dump_heatmaps:
        npz_path = dump_heatmaps(args.out / f"{args.image.stem}_heatmaps.npz", prediction.branches)
        print(f"Wrote heatmaps to {npz_path}")
    return 0
