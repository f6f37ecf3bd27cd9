"""Tests for landmark data types."""

import numpy as np
import pytest
from pydantic import ValidationError

from src.landmarker.services.heatmap.schemas import CoordinateSpace, LandmarkSet


class TestLandmarkSet:
    """Test LandmarkSet validation and conversion."""

    def test_from_array_round_trip(self):
        """Test array conversion keeps order and values."""
        points = np.array([[1.5, 2.0], [3.0, 4.25]])

        landmarks = LandmarkSet.from_array(points, domain_id="hand", space=CoordinateSpace.NATIVE)

        assert len(landmarks) == 2
        assert landmarks.space is CoordinateSpace.NATIVE
        np.testing.assert_array_equal(landmarks.as_array(), points)

    def test_requires_a_point(self):
        """Test an empty landmark set is rejected."""
        with pytest.raises(ValidationError):
            LandmarkSet(domain_id="hand", points=[])

    def test_space_parsed_from_json(self):
        """Test the coordinate tag survives a JSON round trip."""
        landmarks = LandmarkSet(domain_id="hand", points=[(1.0, 2.0)], space=CoordinateSpace.NATIVE)

        restored = LandmarkSet.model_validate_json(landmarks.model_dump_json())

        assert restored.space is CoordinateSpace.NATIVE
        assert restored.points == [(1.0, 2.0)]
