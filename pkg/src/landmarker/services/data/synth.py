"""Deterministic toy corpora for exercising the full pipeline without medical data.

Each domain has a template of K landmarks. Every image places the template at a
random pose (rotation, scale, shift), draws bars between consecutive landmarks
and a marker at each landmark, then adds noise. Markers differ per landmark
index in size and brightness, and per domain in shape (disks for even domains,
squares for odd ones), so each landmark is identifiable from its surroundings.
"""

import logging
from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw

from src.landmarker.services.data.exceptions import DataError
from src.landmarker.services.data.imaging import save_image, write_points_csv
from src.landmarker.services.data.manifest import MANIFEST_NAME
from src.landmarker.services.data.schemas import (
    DomainSpec,
    ImageRecord,
    ManifestDocument,
    PixelOnlySpacing,
    SynthConfig,
)
from src.landmarker.services.data.transforms import rotation_matrix, transform_points
from src.landmarker.services.seeding import make_rng

logger = logging.getLogger(__name__)

BORDER_MARGIN = 4
MAX_POSE_ATTEMPTS = 200
NOISE_STD = 0.02


def _min_separation(size: int) -> float:
    return float(max(4, min(8, size // 8)))


def _template(rng: np.random.Generator, count: int, size: int) -> np.ndarray:
    """Place ``count`` points in the central half of the frame, pairwise apart."""
    low, high = size // 4, size - 1 - size // 4
    separation = _min_separation(size)
    points: list[np.ndarray] = []
    for _ in range(count * 1000):
        candidate = rng.integers(low, high + 1, size=2).astype(np.float64)
        if all(np.linalg.norm(candidate - p) >= separation for p in points):
            points.append(candidate)
            if len(points) == count:
                return np.stack(points)
    raise DataError(f"Cannot place {count} separated landmarks in a {size}x{size} image")


def _pose(rng: np.random.Generator, template: np.ndarray, size: int) -> np.ndarray:
    """Random similarity transform of the template, rounded to integer pixels."""
    center = ((size - 1) / 2.0, (size - 1) / 2.0)
    separation = _min_separation(size) / 2.0
    for _ in range(MAX_POSE_ATTEMPTS):
        angle = rng.uniform(-15.0, 15.0)
        scale = rng.uniform(0.9, 1.1)
        shift = rng.uniform(-4.0, 4.0, size=2)
        cx, cy = center
        scaling = np.array(
            [[scale, 0.0, cx * (1 - scale)], [0.0, scale, cy * (1 - scale)], [0.0, 0.0, 1.0]]
        )
        matrix = rotation_matrix(angle, center) @ scaling
        points = np.round(transform_points(template, matrix) + shift)

        inside = (points >= BORDER_MARGIN) & (points <= size - 1 - BORDER_MARGIN)
        gaps = [
            np.linalg.norm(points[i] - points[j])
            for i in range(len(points))
            for j in range(i + 1, len(points))
        ]
        if inside.all() and (not gaps or min(gaps) >= separation):
            return points
    return np.round(template)


def render_image(
    points: np.ndarray, size: int, domain_index: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw the primitives for one image; returns [1, size, size] in [0, 1]."""
    canvas = Image.new("L", (size, size), color=20)
    draw = ImageDraw.Draw(canvas)

    ordered = [(float(x), float(y)) for x, y in points]
    if len(ordered) > 1:
        draw.line(ordered, fill=90, width=2)

    for index, (x, y) in enumerate(ordered):
        radius = 2 + index % 3
        brightness = 160 + 25 * (index % 4)
        box = [x - radius, y - radius, x + radius, y + radius]
        if domain_index % 2 == 0:
            draw.ellipse(box, fill=brightness)
        else:
            draw.rectangle(box, fill=brightness)
    # Centres go last so no later marker covers a landmark pixel.
    for x, y in ordered:
        draw.point((x, y), fill=255)

    image = np.asarray(canvas, dtype=np.float64) / 255.0
    image = image + rng.normal(0.0, NOISE_STD, size=image.shape)
    return np.clip(image, 0.0, 1.0)[None].astype(np.float32)


def generate_domain(config: SynthConfig, domain_index: int, out_dir: Path) -> Path:
    """Write one domain's images, landmark CSVs and manifest; returns the manifest path."""
    count = config.landmarks_per_domain[domain_index]
    size = config.size
    domain = DomainSpec(
        domain_id=f"synth{domain_index}",
        name=f"synthetic {'disks' if domain_index % 2 == 0 else 'squares'}",
        num_landmarks=count,
        resize_to=(size, size),
        spacing=PixelOnlySpacing(),
        split=(config.images_per_domain - config.test_count, config.test_count),
    )
    domain_dir = out_dir / domain.domain_id
    template = _template(make_rng(config.seed, "synth", domain_index), count, size)

    records: list[ImageRecord] = []
    for image_index in range(config.images_per_domain):
        rng = make_rng(config.seed, "synth", domain_index, 1, image_index)
        points = _pose(rng, template, size)
        image_id = f"{image_index:03d}"
        image_rel = Path("images") / f"{image_id}.png"
        landmarks_rel = Path("landmarks") / f"{image_id}.csv"
        save_image(domain_dir / image_rel, render_image(points, size, domain_index, rng))
        write_points_csv(domain_dir / landmarks_rel, points)
        records.append(ImageRecord(image_id=image_id, image=image_rel, landmarks=landmarks_rel))

    manifest_path = domain_dir / MANIFEST_NAME
    document = ManifestDocument(domain=domain, records=records)
    manifest_path.write_text(document.model_dump_json(indent=2), encoding="utf-8")
    logger.info(
        f"Generated synthetic domain '{domain.domain_id}'",
        extra={"images": config.images_per_domain, "landmarks": count, "path": str(domain_dir)},
    )
    return manifest_path


def generate_synthetic_corpus(config: SynthConfig, out_dir: Path) -> list[Path]:
    """
    Generate ``config.num_domains`` toy datasets under ``out_dir``.

    Layout per domain: ``<out_dir>/synth<d>/{images,landmarks}/NNN.*`` and
    ``manifest.json``. Output is byte-identical for a fixed seed.

    Returns:
        Manifest paths, one per domain
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    return [generate_domain(config, index, out_dir) for index in range(config.num_domains)]

