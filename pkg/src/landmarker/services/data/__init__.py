"""Dataset manifests, resizing, augmentation and mixed-domain sampling."""

from src.landmarker.services.data.dataset import LandmarkDataset, load_sample
from src.landmarker.services.data.manifest import load_manifest, load_manifests
from src.landmarker.services.data.presets import preset_domains
from src.landmarker.services.data.sampler import MixedBatchSampler
from src.landmarker.services.data.schemas import (
    AugmentConfig,
    DatasetManifest,
    DatasetSplit,
    DomainSpec,
    Sample,
    SynthConfig,
)
from src.landmarker.services.data.synth import generate_synthetic_corpus
from src.landmarker.services.data.transforms import augment, resize_with_landmarks

__all__ = [
    "AugmentConfig",
    "DatasetManifest",
    "DatasetSplit",
    "DomainSpec",
    "LandmarkDataset",
    "MixedBatchSampler",
    "Sample",
    "SynthConfig",
    "augment",
    "generate_synthetic_corpus",
    "load_manifest",
    "load_manifests",
    "load_sample",
    "preset_domains",
    "resize_with_landmarks",
]
