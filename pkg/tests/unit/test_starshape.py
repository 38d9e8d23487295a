"""
Unit tests for regions and the strong star-shape check.
"""

import numpy as np
import pytest

from radialrep.analysis.starshape import (
    BallRegion,
    BoxRegion,
    ShellRegion,
    SingletonRegion,
    check_strong_star_shape,
    indicator,
    union_of_convex,
)
from radialrep.core.errors import DomainError, SamplingError
from radialrep.core.sampling import SampleSet, geometric_t_schedule


class TestRegions:
    """Tests for region membership and sampling."""

    def test_half_open_box(self):
        box = BoxRegion([0.0], [1.0], lower_closed=False, upper_closed=True)
        assert box.contains([1.0]) is True
        assert box.contains([0.0]) is False
        assert box.contains_closure([0.0]) is True

    def test_degenerate_box_raises(self):
        with pytest.raises(DomainError):
            BoxRegion([1.0, 0.0], [1.0, 1.0])

    def test_open_ball_excludes_sphere(self):
        ball = BallRegion([0.0, 0.0], 1.0, open=True)
        assert ball.contains([0.5, 0.0]) is True
        assert ball.contains([1.0, 0.0]) is False
        assert ball.contains_closure([1.0, 0.0]) is True

    def test_boundary_samples_lie_on_the_ball_sphere(self):
        ball = BallRegion([1.0, -1.0], 2.0)
        points = ball.sample_boundary(32, seed=0).points
        np.testing.assert_allclose(np.linalg.norm(points - [1.0, -1.0], axis=1), 2.0, atol=1e-12)
        assert ball.contains_mask(points).all()

    def test_open_ball_boundary_samples_stay_outside(self):
        ball = BallRegion([0.0, 0.0], 1.0, open=True)
        points = ball.sample_boundary(32, seed=1).points
        assert not ball.contains_mask(points).any()

    def test_interior_samples_start_at_center(self, unit_box):
        samples = unit_box.sample_interiorish(50, seed=0)
        assert len(samples) == 50
        np.testing.assert_array_equal(samples.points[0], unit_box.center)
        assert unit_box.contains_mask(samples.points).all()

    def test_sphere_center_defaults_onto_the_sphere(self):
        sphere = ShellRegion([0.0, 0.0], 1.0, 1.0)
        np.testing.assert_array_equal(sphere.center, [1.0, 0.0])
        assert sphere.contains([0.0, 1.0]) is True
        assert sphere.contains([0.0, 0.5]) is False

    def test_indicator_is_zero_on_region(self, unit_box):
        chi = indicator(unit_box)
        values = chi.eval_batch([[0.0, 0.0], [2.0, 0.0]])
        assert values[0] == 0.0
        assert values[1] == np.inf

    def test_singleton_interior_is_its_point(self):
        point = SingletonRegion([0.0])
        assert len(point.sample_interiorish(10, seed=0)) == 1
        assert point.contains([0.0]) is True
        assert point.contains([1e-3]) is False


class TestUnionOfConvex:
    """Tests for union_of_convex."""

    def test_cross_contains_both_arms(self, cross_region):
        assert cross_region.contains([0.9, 0.0]) is True
        assert cross_region.contains([0.0, -0.9]) is True
        assert cross_region.contains([0.9, 0.9]) is False

    def test_disjoint_boxes_are_rejected(self):
        D1 = BoxRegion([-2.0, -1.0], [-1.0, 1.0])
        D2 = BoxRegion([1.0, -1.0], [2.0, 1.0])
        with pytest.raises(DomainError):
            union_of_convex(D1, D2, [0.0, 0.0])

    def test_center_on_shared_boundary_is_rejected(self):
        D1 = BoxRegion([-1.0], [0.0])
        D2 = BoxRegion([0.0], [1.0])
        with pytest.raises(DomainError):
            union_of_convex(D1, D2, [0.0])

    def test_nonconvex_part_is_rejected(self, unit_box):
        sphere = ShellRegion([0.0, 0.0], 1.0, 1.0)
        with pytest.raises(DomainError):
            union_of_convex(unit_box, sphere, [0.0, 0.0])

    def test_identical_balls_behave_like_the_ball(self):
        ball = BallRegion([0.0, 0.0], 1.0)
        union = union_of_convex(ball, BallRegion([0.0, 0.0], 1.0), [0.0, 0.0])
        X = np.array([[0.5, 0.5], [0.8, 0.8], [0.0, -1.0]])
        np.testing.assert_array_equal(union.contains_mask(X), ball.contains_mask(X))


class TestStrongStarShape:
    """Tests for check_strong_star_shape."""

    def test_cross_passes(self, cross_region):
        samples = cross_region.sample_boundary(64, seed=0)
        report = check_strong_star_shape(cross_region, geometric_t_schedule(20), samples)
        assert report.passed
        assert report.verdict == "pass"
        assert report.label == "no violation found"
        assert report.tested_points == 64

    def test_convex_region_passes_with_interior_points(self):
        ball = BallRegion([0.0, 0.0], 1.0, open=True)
        samples = ball.sample_interiorish(40, seed=2)
        assert check_strong_star_shape(ball, None, samples).passed

    def test_sphere_fails(self):
        sphere = ShellRegion([0.0, 0.0], 1.0, 1.0)
        samples = sphere.sample_boundary(16, seed=0)
        report = check_strong_star_shape(sphere, [0.5, 0.75], samples)
        assert not report.passed
        assert report.verdict == "fail"
        t, u = report.violations[0]
        assert t == 0.5
        assert len(u) == 2

    def test_max_violations_caps_the_record(self):
        sphere = ShellRegion([0.0, 0.0], 1.0, 1.0)
        samples = sphere.sample_boundary(16, seed=0)
        report = check_strong_star_shape(sphere, [0.5, 0.75], samples, max_violations=3)
        assert len(report.violations) == 3

    def test_empty_samples_raise(self, unit_box):
        with pytest.raises(SamplingError):
            check_strong_star_shape(unit_box, [0.5], None)

    def test_samples_outside_closure_raise(self, unit_box):
        samples = SampleSet(points=np.array([[3.0, 0.0]]))
        with pytest.raises(DomainError):
            check_strong_star_shape(unit_box, [0.5], samples)

    def test_report_serializes_violations(self):
        sphere = ShellRegion([0.0, 0.0], 1.0, 1.0)
        report = check_strong_star_shape(sphere, [0.5], sphere.sample_boundary(4, seed=0))
        data = report.to_dict()
        assert data["verdict"] == "fail"
        assert data["violations"][0]["t"] == 0.5
