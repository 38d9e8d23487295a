"""
Unit tests for constraint sets, integrands and mesh energies.
"""

import csv
import math
import os

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from radialrep.analysis.relaxation import (
    MatrixBall,
    MeshField,
    RadialEnergyResult,
    SEpsilon,
    check_convex_constraint_h3_h4,
    check_growth_and_lipschitz,
    check_quasiconvexity_necessary,
    check_s_epsilon_properties,
    energy_J,
    radial_energy_report,
    s_epsilon_contains,
    sample_constrained_fields,
    verify_J_ruusc,
    verify_radial_equals_J,
)
from radialrep.catalog import build_integrand
from radialrep.core.errors import DimensionMismatchError, DomainError, HypothesisNotMetError

entries = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
SCHEDULE = [0.5, 0.75, 0.875, 0.9375]


@pytest.fixture
def frobenius_squared():
    return build_integrand({"name": "frobenius_power", "params": {"power": 2.0}})


def _rotation(theta):
    return np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])


class TestSEpsilon:
    """Tests for S_eps membership and its structural properties."""

    def test_membership_witnesses(self):
        eps = 0.3
        r = math.sqrt(eps)
        xi = [[math.sqrt(1.5 * eps), -r], [r, 0.0]]
        zeta = [[0.0, r], [-r, math.sqrt(1.5 * eps)]]
        mid = 0.5 * (np.array(xi) + np.array(zeta))
        assert s_epsilon_contains(np.zeros((2, 2)), eps)
        assert s_epsilon_contains(xi, eps)
        assert s_epsilon_contains(zeta, eps)
        assert not s_epsilon_contains(mid, eps)

    def test_nonpositive_eps_raises(self):
        with pytest.raises(DomainError):
            s_epsilon_contains(np.zeros((2, 2)), 0.0)
        with pytest.raises(DomainError):
            SEpsilon(-1.0)

    @given(
        a=entries, b=entries, c=entries, d=entries,
        theta=st.floats(min_value=0.0, max_value=2 * math.pi),
        eps=st.floats(min_value=0.01, max_value=2.0),
    )
    @settings(max_examples=200)
    def test_membership_is_invariant_under_rotation(self, a, b, c, d, theta, eps):
        xi = np.array([[a, b], [c, d]])
        margin = eps + np.linalg.det(xi) - np.trace(xi) ** 2
        assume(abs(margin) > 1e-6 * (1.0 + np.sum(xi ** 2)))
        P = _rotation(theta)
        assert s_epsilon_contains(xi, eps) == s_epsilon_contains(P @ xi @ P.T, eps)

    def test_closure_samples_lie_in_the_closure(self):
        S = SEpsilon(0.5)
        samples = S.closure_samples(200, seed=0)
        assert samples.shape == (200, 2, 2)
        assert S.closure_mask(samples, tol=1e-8).all()

    def test_structural_properties(self):
        report = check_s_epsilon_properties(0.5, closure_count=500, rank_one_count=200, seed=0)
        assert set(report.checks) == {"contains_zero", "radial_closure", "not_convex", "unbounded", "rank_one_convex"}
        assert report.passed
        theorem = report.to_report("s_epsilon_properties")
        assert theorem.passed
        assert len(theorem.rows) == 5

    def test_t_equal_one_is_rejected(self):
        with pytest.raises(DomainError):
            check_s_epsilon_properties(0.5, closure_count=10, t_schedule=[0.5, 1.0], rank_one_count=10)


class TestConvexConstraint:
    """Tests for check_convex_constraint_h3_h4."""

    def test_matrix_ball_passes(self):
        report = check_convex_constraint_h3_h4(MatrixBall(2.0), count=200)
        assert report.passed
        assert set(report.checks) == {"zero_interior", "radial_closure"}

    def test_nonconvex_set_is_refused(self):
        with pytest.raises(HypothesisNotMetError):
            check_convex_constraint_h3_h4(SEpsilon(1.0), count=10)


class TestIntegrands:
    """Tests for the growth and quasiconvexity checks."""

    def test_frobenius_growth_holds(self, frobenius_squared):
        check = check_growth_and_lipschitz(frobenius_squared, count=400)
        assert check.passed
        assert check.c_est == pytest.approx(1.0)

    def test_negative_integrand_fails_growth(self):
        L = build_integrand("negative_frobenius")
        check = check_growth_and_lipschitz(L, count=100)
        assert not check.passed
        assert "nonnegative" in check.failures

    def test_convex_integrand_passes_the_quasiconvexity_check(self, frobenius_squared):
        assert check_quasiconvexity_necessary(frobenius_squared, count=50, n=4).passed

    def test_concave_integrand_is_caught(self):
        L = build_integrand("negative_frobenius")
        report = check_quasiconvexity_necessary(L, count=20, n=4)
        assert not report.passed
        assert report.witness is not None


class TestMeshEnergy:
    """Tests for mesh fields and the energy J."""

    def test_affine_field_has_constant_gradient(self):
        A = np.array([[1.0, 2.0], [-0.5, 0.25]])
        u = MeshField.from_function(lambda x: x @ A.T, n=4, d=2)
        np.testing.assert_allclose(u.cell_gradients(), np.broadcast_to(A, (16, 2, 2)), atol=1e-12)

    def test_energy_of_an_affine_field(self, frobenius_squared):
        A = np.array([[1.0, 2.0], [-0.5, 0.25]])
        u = MeshField.from_function(lambda x: x @ A.T, n=4, d=2)
        assert energy_J(u, frobenius_squared) == pytest.approx(np.sum(A ** 2))

    def test_bad_dimension_raises(self):
        with pytest.raises(DimensionMismatchError):
            MeshField(np.zeros((3, 3, 3, 2)), d=3)

    def test_field_csv_lists_nodes_and_values(self, temp_dir):
        u = MeshField.from_function(lambda x: 2.0 * x, n=2, d=2)
        path = os.path.join(temp_dir, "field.csv")
        u.to_csv(path)
        with open(path, newline="") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["x0", "x1", "u0", "u1"]
        assert len(rows) == 10
        assert [float(v) for v in rows[-1]] == [1.0, 1.0, 2.0, 2.0]

    @given(t=st.floats(min_value=0.0, max_value=1.0), seed=st.integers(min_value=0, max_value=1000))
    @settings(max_examples=30, deadline=None)
    def test_quadratic_energy_is_two_homogeneous(self, t, seed):
        L = build_integrand({"name": "frobenius_power", "params": {"power": 2.0}})
        values = np.random.default_rng(seed).standard_normal((5, 5, 2))
        u = MeshField(values, d=2)
        assert energy_J(u.scaled(t), L) == pytest.approx(t ** 2 * energy_J(u, L), rel=1e-9, abs=1e-12)

    def test_constrained_fields_start_at_zero(self):
        S = SEpsilon(1.0)
        fields = sample_constrained_fields(S, n=4, count=5, seed=0)
        assert len(fields) == 5
        assert not fields[0].values.any()
        assert all(u.admissible(S) for u in fields)


class TestRelaxationVerifiers:
    """Tests for verify_J_ruusc and verify_radial_equals_J."""

    def test_J_ruusc_on_s_epsilon(self, frobenius_squared):
        report = verify_J_ruusc(frobenius_squared, SEpsilon(1.0), n=4, count=10)
        assert report.passed
        assert report.metadata["a"] == 1.0
        assert len(report.rows) == 30

    def test_radial_energy_limit(self, frobenius_squared):
        fields = sample_constrained_fields(SEpsilon(1.0), n=4, count=3, seed=1)
        result = verify_radial_equals_J(fields[-1], frobenius_squared)
        assert result
        assert result.geometric
        assert all(r <= 0.6 for r in result.ratios)
        assert result.ratios[-1] == pytest.approx(0.5, abs=1e-3)

    def test_frobenius_squared_scales_with_t_squared(self, frobenius_squared):
        u = sample_constrained_fields(SEpsilon(1.0), n=4, count=2, seed=3)[-1]
        result = verify_radial_equals_J(u, frobenius_squared)
        expected = [(1.0 - t * t) * result.J for t in result.t_schedule]
        assert result.gaps == pytest.approx(expected, abs=1e-12)

    def test_gaps_that_stall_are_not_geometric(self):
        result = RadialEnergyResult(
            J=1.0, extrapolated=1.0, t_schedule=SCHEDULE, gaps=[1.0, 0.9, 0.81, 0.73], tolerance=1e-6
        )
        assert result.error == 0.0
        assert not result.geometric
        assert not result.passed

    def test_gaps_at_rounding_level_are_skipped(self):
        result = RadialEnergyResult(
            J=1.0, extrapolated=1.0, t_schedule=SCHEDULE, gaps=[1e-3, 5e-4, 0.0, 0.0], tolerance=1e-6
        )
        assert result.ratios == [0.5, 0.0]
        assert result.geometric

    def test_field_outside_the_closure_raises(self, frobenius_squared):
        u = MeshField.from_function(lambda x: x, n=4, d=2)
        with pytest.raises(DomainError):
            verify_radial_equals_J(u, frobenius_squared, S=SEpsilon(0.1))

    def test_report_has_one_row_per_field(self, frobenius_squared):
        fields = sample_constrained_fields(SEpsilon(1.0), n=4, count=4, seed=2)
        report = radial_energy_report(fields, frobenius_squared, S=SEpsilon(1.0))
        assert report.passed
        assert len(report.rows) == 4
        assert report.checks == {"geometric_decrease": True}
        assert all(row["max_tail_ratio"] <= 0.51 for row in report.rows)
