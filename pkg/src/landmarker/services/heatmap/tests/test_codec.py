"""Tests for Gaussian heatmap encoding and argmax decoding."""

import math

import numpy as np
import pytest

from src.landmarker.exceptions import ContractViolation
from src.landmarker.services.heatmap.codec import (
    decode_batch,
    decode_heatmap,
    encode_heatmap,
    peak_value,
)
from src.landmarker.services.heatmap.exceptions import (
    HeatmapDecodeError,
    LandmarkOutOfBounds,
    WrongCoordinateSpace,
)
from src.landmarker.services.heatmap.schemas import CoordinateSpace, Heatmap, LandmarkSet


def _landmarks(points: list[tuple[float, float]], space: CoordinateSpace = CoordinateSpace.RESIZED) -> LandmarkSet:
    return LandmarkSet(domain_id="head", points=points, space=space)


class TestEncodeHeatmap:
    """Test target encoding."""

    def test_peak_value_at_sigma_three(self):
        """Test the analytic peak for sigma 3."""
        assert peak_value(3.0) == pytest.approx(0.13298076013381091, abs=1e-12)

    def test_peak_at_integer_landmark(self):
        """Test the encoded value at the landmark equals the analytic peak."""
        heatmap = encode_heatmap(_landmarks([(10.0, 20.0)]), 32, 32, 3.0)

        assert heatmap.values.shape == (1, 32, 32)
        assert heatmap.values[0, 20, 10] == pytest.approx(1.0 / (math.sqrt(2 * math.pi) * 3), abs=1e-9)
        assert heatmap.values.max() == heatmap.values[0, 20, 10]

    def test_values_follow_gaussian(self):
        """Test a value two pixels away from the landmark."""
        heatmap = encode_heatmap(_landmarks([(5.0, 5.0)]), 16, 16, 2.0)

        expected = peak_value(2.0) * math.exp(-4.0 / 8.0)
        assert heatmap.values[0, 5, 7] == pytest.approx(expected, rel=1e-12)

    def test_values_below_one(self):
        """Test unnormalised targets stay in [0, 1)."""
        heatmap = encode_heatmap(_landmarks([(3.0, 4.0), (12.5, 7.25)]), 16, 16, 1.0)

        assert heatmap.values.min() >= 0.0
        assert heatmap.values.max() < 1.0

    def test_peak_normalized(self):
        """Test the optional mode scales the peak to exactly one."""
        heatmap = encode_heatmap(_landmarks([(4.0, 6.0)]), 16, 16, 3.0, peak_normalized=True)

        assert heatmap.values[0, 6, 4] == 1.0

    def test_channel_per_landmark(self):
        """Test one channel is produced per landmark, in order."""
        heatmap = encode_heatmap(_landmarks([(1.0, 1.0), (8.0, 2.0), (3.0, 9.0)]), 12, 10, 1.5)

        assert heatmap.num_channels == 3
        assert (heatmap.height, heatmap.width) == (12, 10)
        assert np.unravel_index(heatmap.values[1].argmax(), (12, 10)) == (2, 8)

    def test_rejects_out_of_bounds_landmark(self):
        """Test a point outside the grid names the offending index."""
        with pytest.raises(LandmarkOutOfBounds) as exc_info:
            encode_heatmap(_landmarks([(1.0, 1.0), (16.0, 3.0)]), 16, 16, 3.0)

        assert exc_info.value.index == 1

    def test_rejects_native_space(self):
        """Test native-space landmarks are refused."""
        with pytest.raises(WrongCoordinateSpace):
            encode_heatmap(_landmarks([(1.0, 1.0)], CoordinateSpace.NATIVE), 16, 16, 3.0)

    def test_rejects_count_mismatch(self):
        """Test the declared landmark count is enforced."""
        with pytest.raises(ContractViolation):
            encode_heatmap(_landmarks([(1.0, 1.0)]), 16, 16, 3.0, expected_count=2)

    def test_rejects_non_positive_sigma(self):
        """Test sigma must be positive."""
        with pytest.raises(ContractViolation):
            encode_heatmap(_landmarks([(1.0, 1.0)]), 16, 16, 0.0)


class TestDecodeHeatmap:
    """Test argmax decoding."""

    def test_round_trip_every_interior_position(self):
        """Test decode(encode(p)) = p for every integer p at least 1 px from the border of 32x32."""
        positions = range(1, 31)
        for y in positions:
            points = [(float(x), float(y)) for x in positions]
            heatmap = encode_heatmap(_landmarks(points), 32, 32, 3.0)
            decoded = decode_heatmap(heatmap)

            assert decoded.points == points
            peaks = heatmap.values[np.arange(len(points)), y, list(positions)]
            np.testing.assert_allclose(peaks, 0.13298076013381091, atol=1e-9)

    def test_ties_resolve_to_first_pixel(self):
        """Test an all-zero channel decodes to the top-left pixel."""
        values = np.zeros((1, 4, 5))
        values[0, 2, 3] = values[0, 1, 4] = 0.5

        decoded = decode_heatmap(Heatmap(domain_id="chest", values=values, sigma=3.0))
        blank = decode_heatmap(Heatmap(domain_id="chest", values=np.zeros((1, 4, 5)), sigma=3.0))

        assert decoded.points == [(4.0, 1.0)]
        assert blank.points == [(0.0, 0.0)]

    def test_nan_channel_rejected(self):
        """Test a NaN channel raises with the channel index."""
        values = np.zeros((3, 4, 4))
        values[2, 1, 1] = np.nan

        with pytest.raises(HeatmapDecodeError) as exc_info:
            decode_heatmap(Heatmap(domain_id="hand", values=values, sigma=3.0))

        assert exc_info.value.channel == 2

    def test_wrong_rank_rejected(self):
        """Test a 2D array is not a heatmap."""
        with pytest.raises(ContractViolation):
            decode_heatmap(Heatmap(domain_id="hand", values=np.zeros((4, 4)), sigma=3.0))

    def test_result_in_resized_space(self):
        """Test decoded points carry the domain, image id and resized tag."""
        heatmap = encode_heatmap(_landmarks([(2.0, 3.0)]), 8, 8, 1.0)

        decoded = decode_heatmap(heatmap, image_id="007")

        assert decoded.domain_id == "head"
        assert decoded.image_id == "007"
        assert decoded.space is CoordinateSpace.RESIZED


class TestDecodeBatch:
    """Test batched decoding."""

    def test_matches_single_decode(self):
        """Test the batched decoder agrees with decode_heatmap."""
        rng = np.random.default_rng(0)
        values = rng.random((3, 2, 8, 6))

        batch = decode_batch(values)

        for index in range(3):
            single = decode_heatmap(Heatmap(domain_id="d", values=values[index], sigma=1.0))
            np.testing.assert_array_equal(batch[index], single.as_array())


class TestEncodeExamples:
    """Worked values at sigma 3."""

    def test_values_near_landmark(self):
        """Test 0.13298 at the landmark and 0.08066 three pixels away."""
        heatmap = encode_heatmap(_landmarks([(7.0, 5.0)]), 16, 16, 3.0)

        assert heatmap.values[0, 5, 7] == pytest.approx(0.13298, abs=1e-5)
        assert heatmap.values[0, 5, 10] == pytest.approx(0.08066, abs=1e-5)

    def test_symmetric_about_center(self):
        """Test a landmark centred between columns gives a mirror-symmetric map."""
        heatmap = encode_heatmap(_landmarks([(31.5, 31.5)]), 64, 64, 3.0)

        np.testing.assert_allclose(heatmap.values[0], heatmap.values[0][:, ::-1], rtol=1e-12)
