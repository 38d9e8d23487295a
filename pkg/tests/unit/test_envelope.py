"""
Unit tests for the lsc envelope estimator.
"""

import math

import numpy as np
import pytest

from radialrep.analysis.envelope import (
    EnvelopeParams,
    check_lsc_in_D,
    envelope_values,
    lsc_envelope,
    lsc_envelope_in_D,
    tabulate_envelope,
)
from radialrep.catalog import build_function, build_region
from radialrep.core.errors import DomainError
from radialrep.core.sampling import uniform_grid, user_supplied

SMALL = EnvelopeParams(levels=16, samples_per_shell=32)


class TestEnvelopeParams:
    """Tests for EnvelopeParams."""

    def test_radii_halve(self):
        np.testing.assert_allclose(EnvelopeParams(r0=2.0, levels=3).radii(), [2.0, 1.0, 0.5])

    def test_refined_deepens_and_densifies(self):
        params = EnvelopeParams(levels=10, samples_per_shell=16).refined(4)
        assert params.levels == 14
        assert params.samples_per_shell == 64

    def test_refined_at_scale_one_is_identity(self):
        params = EnvelopeParams()
        assert params.refined(1) is params


class TestLscEnvelope:
    """Tests for lsc_envelope and lsc_envelope_in_D."""

    def test_continuous_function_is_its_own_envelope(self, norm_squared):
        est = lsc_envelope(norm_squared, [0.5, 0.0], SMALL)
        assert est.estimate <= 0.25
        assert est.estimate == pytest.approx(0.25, abs=1e-3)

    def test_upward_jump_is_smoothed_down(self):
        f = build_function({"name": "step", "params": {"threshold": 0.0, "left": 1.0, "right": 0.0}})
        assert f.eval_batch([[0.0]])[0] == 1.0
        assert lsc_envelope(f, [0.0], SMALL).estimate == 0.0

    def test_spike_is_removed(self):
        f = build_function({"name": "spike", "params": {"at": [0.0, 0.0], "height": 5.0}})
        assert lsc_envelope(f, [0.0, 0.0], SMALL).estimate == 0.0

    def test_per_radius_inf_is_monotone(self, cubic):
        est = lsc_envelope(cubic, [0.3, -0.2], SMALL)
        assert all(a <= b for a, b in zip(est.per_radius_inf, est.per_radius_inf[1:]))
        assert est.estimate == est.per_radius_inf[-1]

    def test_outside_the_closure_is_inf(self, norm_squared, unit_box):
        est = lsc_envelope_in_D(norm_squared, unit_box, [3.0, 0.0], SMALL)
        assert est.estimate == math.inf
        assert not est.inconclusive

    def test_boundary_point_of_open_ball_takes_the_inner_limit(self, norm_squared):
        ball = build_region({"name": "ball", "params": {"center_point": [0.0, 0.0], "radius": 1.0, "open": True}})
        est = lsc_envelope_in_D(norm_squared, ball, [1.0, 0.0], SMALL)
        assert est.estimate == pytest.approx(1.0, abs=1e-3)
        assert not est.inconclusive

    def test_envelope_values_vectorize(self, norm_squared):
        U = np.array([[0.0, 0.0], [0.5, 0.5]])
        values = envelope_values(norm_squared, U, SMALL)
        np.testing.assert_allclose(values, [0.0, 0.5], atol=1e-3)


class TestCheckLscInD:
    """Tests for check_lsc_in_D."""

    def test_continuous_function_passes(self, cubic, cross_region):
        report = check_lsc_in_D(cubic, cross_region, cross_region.sample_interiorish(16, seed=0), params=SMALL)
        assert report.statement_id == "lsc_in_D"
        assert report.passed
        assert len(report.rows) == 16

    def test_spike_inside_the_region_fails(self):
        f = build_function({"name": "spike", "params": {"at": [0.0], "height": 5.0}})
        D = build_region({"name": "interval", "params": {"lo": -1.0, "hi": 1.0}})
        report = check_lsc_in_D(f, D, D.sample_interiorish(8, seed=0), params=SMALL)
        assert not report.passed
        assert report.max_gap == pytest.approx(5.0)
        assert report.witness["point"] == [0.0]

    def test_samples_must_lie_in_the_region(self, cubic, unit_box):
        with pytest.raises(DomainError):
            check_lsc_in_D(cubic, unit_box, user_supplied([[2.0, 0.0]], dim=2))


class TestTabulateEnvelope:
    """Tests for tabulate_envelope."""

    def test_table_holds_the_envelope_at_nodes(self):
        f = build_function({"name": "step", "params": {"threshold": 0.0, "left": 1.0, "right": 0.0}})
        grid = uniform_grid([-1.0, 1.0], 5)
        table = tabulate_envelope(f, grid, SMALL)
        np.testing.assert_array_equal(table.eval_batch([[-1.0], [0.0], [1.0]]), [1.0, 0.0, 0.0])

    def test_non_grid_samples_raise(self, norm_squared):
        with pytest.raises(DomainError):
            tabulate_envelope(norm_squared, user_supplied([[0.0, 0.0]], dim=2))
