"""
Unit tests for the catalog of functions, regions, integrands and constraint sets.
"""

import numpy as np
import pytest

from radialrep.catalog import (
    build_constraint_set,
    build_function,
    build_integrand,
    build_region,
    list_entries,
    normalize_ref,
    product_of,
    restricted_to,
    scaled_by,
    sum_of,
    translated_by,
)
from radialrep.core.errors import ProblemSpecError


class TestReferences:
    """Tests for reference parsing and error reporting."""

    def test_string_reference(self):
        assert normalize_ref("cubic_coupling", "function") == {"name": "cubic_coupling", "params": {}}

    def test_reference_without_name(self):
        with pytest.raises(ProblemSpecError) as excinfo:
            normalize_ref({"params": {}}, "function")
        assert excinfo.value.field == "function"

    def test_unknown_function_names_the_field(self):
        with pytest.raises(ProblemSpecError) as excinfo:
            build_function({"name": "no_such_function"})
        assert excinfo.value.field == "function.name"
        assert "no_such_function" in str(excinfo.value)

    def test_bad_parameter_names_params(self):
        with pytest.raises(ProblemSpecError) as excinfo:
            build_function({"name": "norm_power", "params": {"exponent": 3}})
        assert excinfo.value.field == "function.params"

    def test_nested_errors_keep_the_path(self):
        ref = {"name": "sum", "params": {"args": ["cubic_coupling", {"name": "missing"}]}}
        with pytest.raises(ProblemSpecError) as excinfo:
            build_function(ref)
        assert excinfo.value.field == "function.params.args[1].name"

    def test_domain_errors_become_spec_errors(self):
        with pytest.raises(ProblemSpecError):
            build_region({"name": "box", "params": {"lo": [1.0], "hi": [0.0]}})

    def test_built_objects_keep_their_reference(self):
        f = build_function({"name": "norm_power", "params": {"dim": 3, "p": 1.5}})
        assert f.ref == {"name": "norm_power", "params": {"dim": 3, "p": 1.5}}
        assert f.describe() == f.ref

    def test_listing_is_sorted(self):
        entries = list_entries()
        assert entries["functions"] == sorted(entries["functions"])
        assert "union_of_convex" in entries["regions"]
        assert "frobenius_power" in entries["integrands"]
        assert "s_epsilon" in entries["constraint_sets"]


class TestFunctions:
    """Tests for the catalog functions."""

    def test_norm_power(self):
        f = build_function({"name": "norm_power", "params": {"dim": 2, "p": 2.0}})
        assert f.eval_batch([[3.0, 4.0]])[0] == pytest.approx(25.0)
        assert f.properties.convex

    def test_quadratic_lower_bound(self):
        f = build_function({"name": "quadratic", "params": {"Q": [[1.0]], "b": [-6.0], "c": 10.0}})
        assert f.properties.lower_bound == pytest.approx(1.0)
        assert f.eval_batch([[3.0]])[0] == pytest.approx(1.0)

    def test_barrier_is_inf_on_the_sphere(self):
        f = build_function({"name": "barrier", "params": {"dim": 2, "radius": 1.0}})
        values = f.eval_batch([[0.0, 0.0], [1.0, 0.0]])
        assert values[0] == pytest.approx(1.0)
        assert values[1] == np.inf

    def test_step_takes_left_at_threshold(self):
        f = build_function({"name": "step", "params": {"threshold": 0.5, "left": 2.0, "right": -1.0}})
        np.testing.assert_array_equal(f.eval_batch([[0.5], [0.6]]), [2.0, -1.0])
        assert not f.properties.continuous

    def test_spike(self):
        f = build_function({"name": "spike", "params": {"at": [0.0], "height": 5.0}})
        np.testing.assert_array_equal(f.eval_batch([[0.0], [1e-12]]), [5.0, 0.0])

    def test_indicator_of_interval(self):
        f = build_function({"name": "indicator", "params": {"region": {"name": "interval", "params": {"lo": -1, "hi": 1}}}})
        np.testing.assert_array_equal(f.eval_batch([[0.5], [1.5]]), [0.0, np.inf])


class TestCombinators:
    """Tests for the composition helpers."""

    def test_sum_intersects_domains(self, norm_squared):
        barrier = build_function("barrier")
        total = sum_of(norm_squared, barrier)
        values = total.eval_batch([[0.0, 0.0], [2.0, 0.0]])
        assert values[0] == pytest.approx(1.0)
        assert values[1] == np.inf
        assert total.properties.lower_bound == pytest.approx(1.0)
        assert total.ref["name"] == "sum"

    def test_product_bounds(self):
        f = build_function({"name": "constant", "params": {"value": 2.0}})
        g = build_function({"name": "constant", "params": {"value": 3.0}})
        prod = product_of(f, g)
        assert prod.eval_batch([[7.0]])[0] == 6.0
        assert prod.properties.lower_bound == 6.0

    def test_mismatched_dimensions(self, norm_squared):
        with pytest.raises(ProblemSpecError):
            sum_of(norm_squared, build_function("step"))

    def test_zero_times_inf_keeps_the_domain(self):
        barrier = build_function("barrier")
        zero = scaled_by(barrier, 0.0)
        values = zero.eval_batch([[0.5, 0.0], [2.0, 0.0]])
        assert values[0] == 0.0
        assert values[1] == np.inf

    def test_negative_scale_drops_convexity(self, norm_squared):
        assert not scaled_by(norm_squared, -1.0).properties.convex

    def test_translation_shifts_bounds(self, norm_squared):
        shifted = translated_by(norm_squared, 3.0)
        assert shifted.properties.lower_bound == 3.0
        assert shifted.ref == {"name": "translated", "params": {"shift": 3.0, "args": [norm_squared.ref]}}

    def test_restricted_reference_rebuilds(self, norm_squared, unit_box):
        restricted = restricted_to(norm_squared, unit_box)
        rebuilt = build_function(restricted.ref)
        X = np.array([[0.5, 0.5], [1.5, 0.0]])
        np.testing.assert_array_equal(rebuilt.eval_batch(X), restricted.eval_batch(X))

    def test_nested_reference_through_the_catalog(self):
        f = build_function({
            "name": "scaled",
            "params": {"factor": 2.0, "args": [{"name": "norm_power", "params": {"dim": 1, "p": 1.0}}]},
        })
        assert f.eval_batch([[-3.0]])[0] == pytest.approx(6.0)


class TestIntegrandsAndConstraintSets:
    """Tests for integrands and constraint sets."""

    def test_frobenius_power(self):
        L = build_integrand({"name": "frobenius_power", "params": {"power": 2.0}})
        xi = np.array([[[1.0, 2.0], [2.0, 0.0]]])
        assert L.L(xi)[0] == pytest.approx(9.0)
        assert L.p == 2.0

    def test_s_epsilon_membership(self):
        S = build_constraint_set({"name": "s_epsilon", "params": {"eps": 0.1}})
        assert S.contains_mask(np.zeros((2, 2))).tolist() == [True]
        assert S.contains_mask(np.eye(2)).tolist() == [False]

    def test_nonpositive_eps_is_a_spec_error(self):
        with pytest.raises(ProblemSpecError):
            build_constraint_set({"name": "s_epsilon", "params": {"eps": 0.0}})
