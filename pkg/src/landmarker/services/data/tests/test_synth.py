"""Tests for the synthetic corpus generator."""

import pytest
from pydantic import ValidationError

from src.landmarker.services.data.imaging import load_image, read_points_csv
from src.landmarker.services.data.schemas import SynthConfig
from src.landmarker.services.data.synth import BORDER_MARGIN, generate_synthetic_corpus


class TestSynthConfig:
    """Test corpus parameter validation."""

    def test_broadcasts_single_landmark_count(self):
        """Test one count applies to every domain."""
        assert SynthConfig(num_domains=3, landmarks_per_domain=[4]).landmarks_per_domain == [4, 4, 4]

    def test_count_mismatch(self):
        """Test the landmark list must match the domain count."""
        with pytest.raises(ValidationError):
            SynthConfig(num_domains=3, landmarks_per_domain=[3, 5])

    def test_size_multiple_of_eight(self):
        """Test the image size must be a multiple of 8."""
        with pytest.raises(ValidationError):
            SynthConfig(size=60)

    def test_needs_training_images(self):
        """Test the test split cannot take every image."""
        with pytest.raises(ValidationError):
            SynthConfig(images_per_domain=4, test_count=4)


class TestGenerateSyntheticCorpus:
    """Test generated datasets."""

    def test_layout_and_counts(self, synth_manifests):
        """Test two domains with 3 and 5 landmarks on 64x64 images."""
        assert [m.domain.domain_id for m in synth_manifests] == ["synth0", "synth1"]
        assert [m.domain.num_landmarks for m in synth_manifests] == [3, 5]
        for manifest in synth_manifests:
            assert (len(manifest.train), len(manifest.val), len(manifest.test)) == (5, 1, 2)
            image = load_image(manifest.train[0].image)
            assert image.shape == (1, 64, 64)

    def test_landmarks_keep_margin(self, synth_manifests):
        """Test every landmark lies at least 4 px inside the border."""
        for manifest in synth_manifests:
            for record in manifest.train + manifest.val + manifest.test:
                points = read_points_csv(record.landmarks)
                assert points.min() >= BORDER_MARGIN
                assert points.max() <= 64 - 1 - BORDER_MARGIN

    def test_landmarks_are_bright(self, synth_manifests):
        """Test each landmark pixel is the brightest marker centre."""
        record = synth_manifests[0].train[0]
        image = load_image(record.image)[0]

        for x, y in read_points_csv(record.landmarks):
            assert image[int(y), int(x)] > 0.8

    def test_byte_identical_for_a_seed(self, tmp_path):
        """Test regenerating with the same seed writes identical files."""
        config = SynthConfig(num_domains=1, landmarks_per_domain=[3], images_per_domain=3, test_count=1)
        first = generate_synthetic_corpus(config, tmp_path / "a")[0].parent
        second = generate_synthetic_corpus(config, tmp_path / "b")[0].parent

        files = sorted(p.relative_to(first) for p in first.rglob("*") if p.is_file())
        assert files
        for relative in files:
            assert (first / relative).read_bytes() == (second / relative).read_bytes()

    def test_seed_changes_output(self, tmp_path):
        """Test a different seed gives different landmarks."""
        base = SynthConfig(num_domains=1, landmarks_per_domain=[3], images_per_domain=3, test_count=1)
        first = generate_synthetic_corpus(base, tmp_path / "a")[0].parent
        second = generate_synthetic_corpus(base.model_copy(update={"seed": 1}), tmp_path / "b")[0].parent

        assert (first / "landmarks" / "000.csv").read_text() != (second / "landmarks" / "000.csv").read_text()
