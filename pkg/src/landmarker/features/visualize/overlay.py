"""Overlay rendering: predicted landmarks in red, ground truth in green."""

from dataclasses import dataclass

import numpy as np
from PIL import Image, ImageDraw

from src.landmarker.services.metrics.errors import radial_errors

PREDICTED_COLOR = (255, 0, 0)
TRUTH_COLOR = (0, 255, 0)
TEXT_COLOR = (255, 255, 0)


@dataclass
class Overlay:
    image: Image.Image
    markers: int
    mre: float | None


def marker_radius(width: int, height: int) -> int:
    return max(2, min(width, height) // 100)


def render_overlay(
    image: np.ndarray, predicted: np.ndarray, truth: np.ndarray | None = None
) -> Overlay:
    """
    Draw landmarks over a [C, H, W] image in [0, 1].

    The MRE (native pixels) is written in the top-left corner when ground truth
    is given.

    Raises:
        ContractViolation: If predicted and truth counts differ
    """
    plane = np.clip(image[0], 0.0, 1.0)
    canvas = Image.fromarray(np.round(plane * 255.0).astype(np.uint8)).convert("RGB")
    draw = ImageDraw.Draw(canvas)
    radius = marker_radius(*canvas.size)

    mre = None
    if truth is not None:
        mre = float(np.mean(radial_errors(predicted, truth)))

    markers = 0
    layers = [(truth, TRUTH_COLOR), (predicted, PREDICTED_COLOR)] if truth is not None else [
        (predicted, PREDICTED_COLOR)
    ]
    for points, color in layers:
        for x, y in points:
            draw.ellipse([x - radius, y - radius, x + radius, y + radius], outline=color, width=1)
            markers += 1

    if mre is not None:
        draw.text((2, 2), f"MRE {mre:.2f}", fill=TEXT_COLOR)
    return Overlay(image=canvas, markers=markers, mre=mre)
