"""
Unit tests for the radial uniform modulus and ru-usc certification.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from radialrep.analysis.modulus import (
    REFUTED,
    SUPPORTED,
    certify_ru_usc,
    convex_bound_check,
    default_a_candidates,
    modulus_profile,
    replay_witness,
)
from radialrep.catalog import build_function, build_region
from radialrep.core.errors import DomainError, HypothesisNotMetError
from radialrep.core.oracle import FunctionOracle, FunctionProperties
from radialrep.core.sampling import geometric_t_schedule, user_supplied

STEP = {"name": "step", "params": {"threshold": 0.9999999999999, "left": 1.0, "right": 0.0}}
INTERVAL = {"name": "interval", "params": {"lo": -1.0, "hi": 1.0}}


def _ball(radius):
    return build_region({"name": "ball", "params": {"center_point": [0.0, 0.0], "radius": radius}})


@pytest.fixture
def concave_declared_convex():
    return FunctionOracle(
        "neg_norm_squared", 2, lambda X: -np.sum(X ** 2, axis=1), properties=FunctionProperties(convex=True)
    )


class TestModulusProfile:
    """Tests for modulus_profile."""

    def test_profile_shapes(self, cubic, cross_region):
        samples = cross_region.sample_interiorish(32, seed=0)
        profile = modulus_profile(cubic, cross_region, 1.0, [0.5, 0.75, 0.875], samples)
        assert profile.t_schedule == [0.5, 0.75, 0.875]
        assert len(profile.delta_estimates) == 3
        assert len(profile.argmax_points) == 3
        assert profile.sample_count == 32
        assert profile.star_violations == []

    def test_center_sample_keeps_the_estimate_nonnegative(self, cubic, cross_region):
        # The center maps to itself, so its ratio is exactly zero.
        samples = cross_region.sample_interiorish(16, seed=0)
        profile = modulus_profile(cubic, cross_region, 1.0, [0.5, 0.9], samples, refine=False)
        assert min(profile.delta_estimates) >= 0.0

    def test_nonpositive_a_raises(self, cubic, cross_region):
        with pytest.raises(DomainError):
            modulus_profile(cubic, cross_region, 0.0, [0.5])

    def test_samples_outside_the_region_raise(self, cubic, cross_region):
        with pytest.raises(DomainError):
            modulus_profile(cubic, cross_region, 1.0, [0.5], user_supplied([[0.9, 0.9]], dim=2))

    def test_csv_has_argmax_columns(self, cubic, cross_region):
        profile = modulus_profile(cubic, cross_region, 1.0, [0.5], cross_region.sample_interiorish(8, seed=0))
        header = profile.to_csv().splitlines()[0]
        assert header == "t,delta_estimate,argmax_0,argmax_1"

    @given(
        a=st.floats(min_value=0.1, max_value=50.0),
        factor=st.floats(min_value=1.0, max_value=10.0),
    )
    @settings(max_examples=25, deadline=None)
    def test_larger_a_never_raises_a_nonnegative_modulus(self, a, factor):
        f = build_function("cubic_coupling")
        D = build_region({"name": "box", "params": {"lo": [-1.0, -1.0], "hi": [1.0, 1.0]}})
        samples = D.sample_interiorish(24, seed=3)
        ts = [0.5, 0.9]
        small = modulus_profile(f, D, a, ts, samples, refine=False).delta_estimates
        large = modulus_profile(f, D, a * factor, ts, samples, refine=False).delta_estimates
        for d_small, d_large in zip(small, large):
            assert np.sign(d_small) == np.sign(d_large)
            assert d_large <= max(d_small, 0.0) + 1e-15


class TestCertification:
    """Tests for certify_ru_usc and replay_witness."""

    def test_default_candidates_drop_duplicates(self, norm_squared, unit_box):
        assert default_a_candidates(norm_squared, unit_box) == [1.0, 10.0, 100.0]

    def test_continuous_function_is_supported(self, cubic, cross_region):
        cert = certify_ru_usc(cubic, cross_region, D_samples=cross_region.sample_interiorish(64, seed=0))
        assert cert.verdict == SUPPORTED
        assert cert.supported
        assert cert.a_used == 1.0
        assert cert.limsup_estimate <= cert.tolerance
        assert len(cert.profiles) == 1

    def test_upward_step_is_refuted_with_a_replayable_witness(self):
        f = build_function(STEP)
        D = build_region(INTERVAL)
        samples = user_supplied([[0.0], [1.0], [-0.5]], dim=1)
        cert = certify_ru_usc(f, D, t_schedule=geometric_t_schedule(40), D_samples=samples, refine=False)
        assert cert.verdict == REFUTED
        assert cert.a_used is None
        assert cert.witness is not None
        assert cert.witness["u"] == [1.0]
        assert replay_witness(f, D, cert.witness) == pytest.approx(cert.witness["ratio"])
        assert cert.witness["ratio"] > cert.tolerance

    def test_empty_candidate_list_raises(self, cubic, cross_region):
        with pytest.raises(DomainError):
            certify_ru_usc(cubic, cross_region, a_candidates=[])

    def test_certificate_serializes_per_a_limsups(self, cubic, cross_region):
        cert = certify_ru_usc(cubic, cross_region, a_candidates=[2.0], D_samples=cross_region.sample_interiorish(16, seed=0))
        data = cert.to_dict()
        assert data["per_a"][0]["a"] == 2.0
        assert data["verdict"] == SUPPORTED


class TestConvexBound:
    """Tests for convex_bound_check."""

    def test_convex_function_meets_the_bound(self, norm_squared):
        D = build_region({"name": "ball", "params": {"center_point": [0.0, 0.0], "radius": 2.0}})
        result = convex_bound_check(norm_squared, D, D_samples=D.sample_interiorish(200, seed=0))
        assert result
        assert result.a == 1.0
        assert result.max_excess <= 0.0
        assert result.witness is None

    def test_nonconvex_function_is_refused(self, cubic, cross_region):
        with pytest.raises(HypothesisNotMetError) as excinfo:
            convex_bound_check(cubic, cross_region)
        assert "convex" in excinfo.value.failed

    def test_false_convex_declaration_slips_through_on_the_unit_ball(self, concave_declared_convex):
        D = _ball(1.0)
        assert convex_bound_check(concave_declared_convex, D, D_samples=D.sample_interiorish(200, seed=0))

    def test_false_convex_declaration_is_caught_on_a_wider_ball(self, concave_declared_convex):
        D = _ball(3.0)
        result = convex_bound_check(concave_declared_convex, D, D_samples=D.sample_interiorish(200, seed=0))
        assert not result
        assert result.max_excess > 0.0
        witness = result.witness
        assert witness["ratio"] > 1.0 - witness["t"]
        assert float(np.sum(np.square(witness["u"]))) * witness["t"] > 1.0
        assert replay_witness(concave_declared_convex, D, witness) == pytest.approx(witness["ratio"])
