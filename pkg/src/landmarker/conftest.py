"""Pytest configuration and shared fixtures."""

from pathlib import Path

import pytest

from src.landmarker.services.data.manifest import load_manifests
from src.landmarker.services.data.schemas import DatasetManifest, DomainSpec, SynthConfig
from src.landmarker.services.data.synth import generate_synthetic_corpus
from src.landmarker.services.models.schemas import ModelConfig


@pytest.fixture
def tiny_domains() -> list[DomainSpec]:
    """Two small pixel-only domains with different landmark counts."""
    return [
        DomainSpec(domain_id="alpha", num_landmarks=2, resize_to=(16, 16), split=(4, 1)),
        DomainSpec(domain_id="beta", num_landmarks=3, resize_to=(16, 16), split=(4, 1)),
    ]


@pytest.fixture
def tiny_config(tiny_domains: list[DomainSpec]) -> ModelConfig:
    """Depth-2 model config small enough for double-precision gradient checks."""
    return ModelConfig(domains=tiny_domains, depth=2, base_channels=8, global_channels=8)


@pytest.fixture(scope="session")
def synth_manifest_paths(tmp_path_factory: pytest.TempPathFactory) -> list[Path]:
    """
    Synthetic corpus shared by the whole session: 2 domains x 8 images, 64x64, {3, 5} landmarks.

    Treat as read-only; tests that write should generate their own corpus.
    """
    out_dir = tmp_path_factory.mktemp("synth")
    return generate_synthetic_corpus(SynthConfig(), out_dir)


@pytest.fixture
def synth_manifests(synth_manifest_paths: list[Path]) -> list[DatasetManifest]:
    """Loaded manifests of the shared synthetic corpus."""
    return load_manifests(synth_manifest_paths)
