"""Domain descriptions of the three public X-ray corpora (head, hand, chest)."""

from src.landmarker.services.data.schemas import (
    DomainSpec,
    PixelOnlySpacing,
    UniformSpacing,
    WristCalibratedSpacing,
)

HEAD = DomainSpec(
    domain_id="head",
    name="cephalometric X-ray",
    num_landmarks=19,
    resize_to=(512, 416),
    spacing=UniformSpacing(mm_per_px=0.1),
    split=(150, 250),
    sdr_thresholds=[2.0, 2.5, 3.0, 4.0],
)

HAND = DomainSpec(
    domain_id="hand",
    name="hand X-ray",
    num_landmarks=37,
    resize_to=(512, 368),
    # Wrist width between the first and fifth landmarks is taken as 50 mm.
    spacing=WristCalibratedSpacing(width_mm=50.0, index_a=0, index_b=4),
    split=(609, 300),
    sdr_thresholds=[2.0, 4.0, 10.0],
)

CHEST = DomainSpec(
    domain_id="chest",
    name="chest X-ray",
    num_landmarks=6,
    resize_to=(512, 512),
    spacing=PixelOnlySpacing(),
    split=(229, 50),
    sdr_thresholds=[3.0, 6.0, 9.0],
)


def preset_domains() -> list[DomainSpec]:
    """Head, hand and chest domain descriptions, in that order."""
    return [HEAD.model_copy(deep=True), HAND.model_copy(deep=True), CHEST.model_copy(deep=True)]
