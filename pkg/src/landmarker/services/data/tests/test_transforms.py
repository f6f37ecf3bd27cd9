"""Tests for resizing and affine augmentation."""

import numpy as np
import pytest

from src.landmarker.services.data.exceptions import ImageLoadError
from src.landmarker.services.data.schemas import AugmentConfig, Sample
from src.landmarker.services.data.transforms import (
    apply_affine,
    augment,
    resize_image,
    resize_with_landmarks,
    rotation_matrix,
    transform_points,
    translation_matrix,
)
from src.landmarker.services.heatmap.exceptions import LandmarkOutOfBounds, WrongCoordinateSpace
from src.landmarker.services.heatmap.schemas import CoordinateSpace, LandmarkSet


def _native(points: list[tuple[float, float]]) -> LandmarkSet:
    return LandmarkSet(domain_id="head", image_id="001", points=points, space=CoordinateSpace.NATIVE)


class TestResize:
    """Test resizing with landmark scaling."""

    def test_halving_scales_landmarks(self):
        """Test a 1024x1024 image resized to 512x512 maps (100, 200) to (50, 100)."""
        image = np.zeros((1, 1024, 1024), dtype=np.float32)

        sample = resize_with_landmarks(image, _native([(100.0, 200.0)]), (512, 512))

        assert sample.image.shape == (1, 512, 512)
        assert sample.landmarks.points == [(50.0, 100.0)]
        assert sample.landmarks.space is CoordinateSpace.RESIZED
        assert sample.native_size == (1024, 1024)

    def test_axes_scale_independently(self):
        """Test non-uniform scaling and the inverse map."""
        image = np.zeros((1, 200, 100), dtype=np.float32)

        sample = resize_with_landmarks(image, _native([(50.0, 50.0)]), (100, 100))

        assert sample.landmarks.points == [(50.0, 25.0)]
        np.testing.assert_allclose(sample.transform.to_native(sample.landmarks.as_array()), [[50.0, 50.0]])

    def test_same_size_is_identity(self):
        """Test resizing to the native size copies the image."""
        image = np.random.default_rng(0).random((1, 8, 8)).astype(np.float32)

        resized, transform = resize_image(image, (8, 8))

        np.testing.assert_array_equal(resized, image)
        assert transform.scale == (1.0, 1.0)

    def test_rejects_out_of_frame_landmark(self):
        """Test a native landmark outside the image."""
        with pytest.raises(LandmarkOutOfBounds):
            resize_with_landmarks(np.zeros((1, 10, 10)), _native([(10.0, 2.0)]), (8, 8))

    def test_rejects_resized_landmarks(self):
        """Test resized-space input is refused."""
        landmarks = LandmarkSet(domain_id="head", points=[(1.0, 1.0)])

        with pytest.raises(WrongCoordinateSpace):
            resize_with_landmarks(np.zeros((1, 10, 10)), landmarks, (8, 8))

    def test_rejects_empty_image(self):
        """Test a zero-sized image."""
        with pytest.raises(ImageLoadError):
            resize_image(np.zeros((1, 0, 10)), (8, 8))


def _point_sample(points: list[tuple[float, float]]) -> Sample:
    """64x64 black image with a bright pixel on each landmark."""
    image = np.zeros((1, 64, 64), dtype=np.float32)
    for x, y in points:
        image[0, int(y), int(x)] = 1.0
    return resize_with_landmarks(image, _native(points), (64, 64))


class TestAffine:
    """Test the geometric augmentation primitives."""

    def test_translation_moves_landmarks_and_pixels(self):
        """Test a (+10, 0) shift moves both the landmark and the bright pixel."""
        sample = _point_sample([(20.0, 30.0)])

        moved = apply_affine(sample, translation_matrix(10.0, 0.0))

        assert moved is not None
        assert moved.landmarks.points == [(30.0, 30.0)]
        assert moved.image[0, 30, 30] == pytest.approx(1.0, abs=1e-4)
        assert moved.image[0, 30, 20] == pytest.approx(0.0, abs=1e-4)

    def test_rotation_round_trip(self):
        """Test rotating by +2 then -2 degrees restores the landmarks."""
        points = np.array([[10.0, 12.0], [50.0, 40.0]])
        center = (31.5, 31.5)

        there = transform_points(points, rotation_matrix(2.0, center))
        back = transform_points(there, rotation_matrix(-2.0, center))

        np.testing.assert_allclose(back, points, atol=1e-9)
        assert not np.allclose(there, points)

    def test_rotation_fixes_center(self):
        """Test the rotation centre does not move."""
        moved = transform_points(np.array([[31.5, 31.5]]), rotation_matrix(2.0, (31.5, 31.5)))

        np.testing.assert_allclose(moved, [[31.5, 31.5]], atol=1e-12)

    def test_leaving_frame_rejected(self):
        """Test a transform pushing a landmark out returns None."""
        sample = _point_sample([(60.0, 30.0)])

        assert apply_affine(sample, translation_matrix(10.0, 0.0)) is None


class TestAugment:
    """Test the randomised augmentation."""

    def test_deterministic_for_a_seed(self):
        """Test the same generator seed gives the same sample."""
        sample = _point_sample([(20.0, 30.0), (40.0, 10.0)])
        config = AugmentConfig(rotate_prob=1.0, translate_prob=1.0)

        first = augment(sample, np.random.default_rng(3), config)
        second = augment(sample, np.random.default_rng(3), config)

        assert first.landmarks.points == second.landmarks.points
        np.testing.assert_array_equal(first.image, second.image)

    def test_landmarks_stay_in_frame(self):
        """Test augmented landmarks never leave the image."""
        sample = _point_sample([(1.0, 1.0), (62.0, 62.0)])
        config = AugmentConfig(rotate_prob=1.0, translate_prob=1.0)

        for seed in range(20):
            points = augment(sample, np.random.default_rng(seed), config).landmarks.as_array()
            assert np.all(points >= 0) and np.all(points < 64)

    def test_disabled_returns_original(self):
        """Test zero probabilities leave the sample untouched."""
        sample = _point_sample([(20.0, 30.0)])

        out = augment(sample, np.random.default_rng(0), AugmentConfig(rotate_prob=0.0, translate_prob=0.0))

        assert out is sample


class TestResizeExamples:
    """Worked resize values."""

    def test_center_maps_to_center(self):
        """Test the centre of a 2400x1935 image lands on the centre of 416x512."""
        image = np.zeros((1, 1935, 2400), dtype=np.float32)

        sample = resize_with_landmarks(image, _native([(1200.0, 967.5)]), (512, 416))

        np.testing.assert_allclose(sample.landmarks.as_array(), [[208.0, 256.0]], atol=1e-9)

    def test_inverse_round_trip(self):
        """Test to_native(to_resized(p)) = p."""
        points = np.random.default_rng(0).random((19, 2)) * np.array([2400.0, 1935.0])
        _, transform = resize_image(np.zeros((1, 1935, 2400), dtype=np.float32), (512, 416))

        np.testing.assert_allclose(transform.to_native(transform.to_resized(points)), points, atol=1e-9)
