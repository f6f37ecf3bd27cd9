"""Tests for single-image prediction."""

import numpy as np
import pytest
import torch

from src.landmarker.exceptions import ContractViolation
from src.landmarker.features.predict.handlers import dump_heatmaps, predict_image
from src.landmarker.services.models.exceptions import UnknownDomainError
from src.landmarker.services.models.schemas import VariantKind
from src.landmarker.services.models.variants import build_variant


@pytest.fixture
def model(tiny_config):
    torch.manual_seed(0)
    return build_variant(VariantKind.GU2NET, tiny_config)


class TestPredictImage:
    """Test native-space predictions."""

    def test_maps_back_to_native_pixels(self, model):
        """Test a 32x48 image is resized to 16x16 and points come back in native scale."""
        image = np.random.default_rng(0).random((1, 32, 48)).astype(np.float32)

        prediction = predict_image(model, image, "beta")

        assert prediction.points.shape == (3, 2)
        # Native coordinates are integer resized ones scaled by (3, 2).
        resized = prediction.points / [3.0, 2.0]
        np.testing.assert_allclose(resized, np.round(resized), atol=1e-9)
        assert prediction.branches.fused.shape == (1, 3, 16, 16)

    def test_unknown_domain(self, model):
        """Test a domain the model was not built for."""
        with pytest.raises(UnknownDomainError):
            predict_image(model, np.zeros((1, 16, 16), dtype=np.float32), "gamma")

    def test_channel_mismatch(self, model):
        """Test a colour image for a grayscale domain."""
        with pytest.raises(ContractViolation):
            predict_image(model, np.zeros((3, 16, 16), dtype=np.float32), "alpha")


def test_dump_heatmaps(model, tmp_path):
    """Every branch of the fused model is archived."""
    prediction = predict_image(model, np.zeros((1, 16, 16), dtype=np.float32), "alpha")

    path = dump_heatmaps(tmp_path / "h.npz", prediction.branches)

    with np.load(path) as archive:
        assert sorted(archive.files) == ["fused", "global", "local"]
        assert archive["local"].shape == (2, 16, 16)
