"""
Unit tests for the core package: extended reals, oracles, sampling, tabulated oracles and run utilities.
"""

import math
import os

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from radialrep.core.errors import (
    DimensionMismatchError,
    ExtRealArithmeticError,
    NumericalBlowupError,
    SamplingError,
)
from radialrep.core.extreal import INF, ExtReal, format_value, gap
from radialrep.core.oracle import FunctionOracle, FunctionProperties, evaluate
from radialrep.core.sampling import (
    geometric_t_schedule,
    low_discrepancy,
    make_samples,
    radius_schedule,
    uniform_grid,
    unit_ball_points,
    unit_directions,
    user_supplied,
)
from radialrep.core.tabulated import TabulatedOracle
from radialrep.core.utils import create_run_directory, load_config, load_default_config, merge_config, save_config

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
integers = st.integers(min_value=-10**6, max_value=10**6)
ext = st.one_of(integers.map(ExtReal), st.just(INF))


class TestExtReal:
    """Tests for ExtReal arithmetic."""

    def test_infinity_absorbs_addition(self):
        assert ExtReal(1.0) + INF == INF
        assert (INF + 2.0).is_finite is False

    def test_inf_minus_inf_is_undefined(self):
        with pytest.raises(ExtRealArithmeticError):
            INF - INF

    def test_finite_minus_inf_is_not_representable(self):
        with pytest.raises(ExtRealArithmeticError):
            ExtReal(3.0) - INF

    def test_negation_of_inf_raises(self):
        with pytest.raises(ExtRealArithmeticError):
            -INF

    def test_zero_times_inf_is_inf(self):
        assert 0.0 * INF == INF

    def test_nan_is_rejected(self):
        with pytest.raises(NumericalBlowupError):
            ExtReal(float("nan"))

    def test_from_float(self):
        assert ExtReal.from_float(math.inf) == INF
        assert ExtReal.from_float(2.5).value == 2.5
        assert INF.to_json() == "inf"

    @given(ext, ext)
    def test_addition_commutes(self, a, b):
        assert a + b == b + a

    @given(ext, ext, ext)
    def test_addition_associates(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @given(ext, ext, ext)
    def test_addition_is_monotone(self, a, b, c):
        if a <= b:
            assert a + c <= b + c

    @given(ext)
    def test_inf_is_top(self, a):
        assert a <= INF

    @given(finite, st.floats(min_value=0.0, max_value=100.0, allow_nan=False))
    @settings(max_examples=200)
    def test_nonnegative_scaling_preserves_order_with_inf(self, x, lam):
        assert ExtReal(x) * lam <= INF * lam


class TestGap:
    """Tests for the extended-real gap."""

    def test_inf_equal_inf_has_zero_gap(self):
        np.testing.assert_array_equal(gap([np.inf, 1.0], [np.inf, 3.0]), [0.0, 2.0])

    def test_one_sided_inf_has_infinite_gap(self):
        assert gap([np.inf], [1.0])[0] == np.inf

    def test_format_value_is_stable(self):
        assert format_value(0.1) == "0.1"
        assert format_value(math.inf) == "inf"
        assert format_value(float("nan")) == "nan"


class TestFunctionOracle:
    """Tests for FunctionOracle."""

    def _disk_square(self):
        return FunctionOracle(
            name="square_on_disk",
            dim=2,
            values=lambda X: np.sum(X ** 2, axis=1),
            domain=lambda X: np.linalg.norm(X, axis=1) < 1.0,
            properties=FunctionProperties(convex=True, lower_bound=0.0),
        )

    def test_outside_domain_is_inf(self):
        f = self._disk_square()
        values = f.eval_batch([[0.5, 0.0], [2.0, 0.0]])
        assert values[0] == pytest.approx(0.25)
        assert values[1] == np.inf

    def test_eval_returns_extreal(self):
        f = self._disk_square()
        assert f.eval([0.0, 0.5]) == ExtReal(0.25)
        assert evaluate(f, [3.0, 3.0]) == INF

    def test_dom_contains(self):
        f = self._disk_square()
        assert f.dom_contains([0.1, 0.1]) is True
        assert f.dom_contains([1.0, 0.0]) is False

    def test_blowup_inside_domain_raises(self):
        f = FunctionOracle(name="bad", dim=1, values=lambda X: 1.0 / X[:, 0])
        with pytest.raises(NumericalBlowupError):
            f.eval_batch([[0.0]])

    def test_dimension_mismatch(self):
        f = self._disk_square()
        with pytest.raises(DimensionMismatchError):
            f.eval_batch([[1.0, 2.0, 3.0]])


class TestSampling:
    """Tests for deterministic point sets."""

    def test_low_discrepancy_is_deterministic(self):
        a = low_discrepancy([[0.0, 1.0], [0.0, 1.0]], 100, seed=7)
        b = low_discrepancy([[0.0, 1.0], [0.0, 1.0]], 100, seed=7)
        np.testing.assert_array_equal(a.points, b.points)
        assert a.provenance["seed"] == 7

    def test_low_discrepancy_stays_in_box(self):
        s = low_discrepancy([[-2.0, 1.0], [3.0, 4.0]], 64, seed=1)
        assert np.all(s.points[:, 0] >= -2.0) and np.all(s.points[:, 0] <= 1.0)
        assert np.all(s.points[:, 1] >= 3.0) and np.all(s.points[:, 1] <= 4.0)

    def test_uniform_grid_includes_corners(self):
        s = uniform_grid([[0.0, 1.0], [0.0, 2.0]], 3)
        assert len(s) == 9
        assert [0.0, 0.0] in s.points.tolist()
        assert [1.0, 2.0] in s.points.tolist()
        assert len(s.axes) == 2

    def test_empty_box_raises(self):
        with pytest.raises(SamplingError):
            low_discrepancy([[1.0, 0.0]], 10, seed=0)

    def test_grid_resolution_below_two_raises(self):
        with pytest.raises(SamplingError):
            uniform_grid([0.0, 1.0], 1)

    def test_user_supplied(self):
        s = user_supplied([[1.0, 2.0], [3.0, 4.0]], dim=2)
        assert len(s) == 2
        with pytest.raises(SamplingError):
            user_supplied([], dim=2)

    def test_make_samples_dispatches_on_kind(self):
        s = make_samples({"kind": "uniform-grid", "box": [-1.0, 1.0], "resolution": 5})
        np.testing.assert_allclose(s.points[:, 0], [-1.0, -0.5, 0.0, 0.5, 1.0])
        with pytest.raises(SamplingError):
            make_samples({"kind": "random"})

    def test_t_schedule(self):
        np.testing.assert_allclose(geometric_t_schedule(3), [0.5, 0.75, 0.875])

    def test_radius_schedule_decreases(self):
        r = radius_schedule(1.0, 4)
        np.testing.assert_allclose(r, [1.0, 0.5, 0.25, 0.125])

    def test_unit_directions_are_unit(self):
        d = unit_directions(3, 50, seed=2)
        np.testing.assert_allclose(np.linalg.norm(d, axis=1), 1.0)

    def test_unit_ball_points_are_prefix_stable(self):
        a = unit_ball_points(2, 20, seed=3)
        b = unit_ball_points(2, 40, seed=3)
        np.testing.assert_array_equal(a, b[:20])
        assert np.all(np.linalg.norm(b, axis=1) <= 1.0)


class TestTabulatedOracle:
    """Tests for TabulatedOracle."""

    def test_nodes_are_exact_and_midpoints_interpolate(self):
        grid = uniform_grid([0.0, 2.0], 3)
        f = FunctionOracle(name="sq", dim=1, values=lambda X: X[:, 0] ** 2)
        table = TabulatedOracle.from_oracle(f, grid)
        assert table.eval_batch([[1.0]])[0] == 1.0
        assert table.eval_batch([[0.5]])[0] == pytest.approx(0.5)
        assert table.interpolated([[0.5]])[0]
        assert not table.interpolated([[2.0]])[0]

    def test_outside_hull_is_inf(self):
        table = TabulatedOracle(name="t", axes=[np.array([0.0, 1.0])], values=np.array([0.0, 1.0]))
        assert table.eval_batch([[1.5]])[0] == np.inf

    def test_next_to_inf_node_is_inf(self):
        table = TabulatedOracle(name="t", axes=[np.array([0.0, 1.0, 2.0])], values=np.array([0.0, 1.0, np.inf]))
        assert table.eval_batch([[0.5]])[0] == pytest.approx(0.5)
        assert table.eval_batch([[1.5]])[0] == np.inf

    def test_csv_round_trip(self, temp_dir):
        table = TabulatedOracle(
            name="t",
            axes=[np.array([0.0, 1.0]), np.array([0.0, 0.5, 1.0])],
            values=np.arange(6, dtype=float),
        )
        path = os.path.join(temp_dir, "table.csv")
        table.to_csv(path)
        loaded = TabulatedOracle.from_csv(path)
        np.testing.assert_array_equal(loaded.table, table.table)


class TestUtils:
    """Tests for configuration files and run directories."""

    def test_default_config_sections(self):
        config = load_default_config()
        assert set(config) >= {"sampling", "envelope", "certification", "radial", "runner"}
        assert config["certification"]["k_max"] == 40

    def test_merge_config_is_recursive(self):
        merged = merge_config({"radial": {"window": 8, "tolerance": 1e-6}, "seed": 0}, {"radial": {"window": 4}})
        assert merged == {"radial": {"window": 4, "tolerance": 1e-6}, "seed": 0}
        assert merge_config({"a": 1}, None) == {"a": 1}

    def test_save_and_load_yaml_and_json(self, temp_dir):
        config = {"envelope": {"levels": 12}, "runner": {"progress": False}}
        for name in ("config.yaml", "config.json"):
            path = os.path.join(temp_dir, "nested", name)
            save_config(config, path)
            assert load_config(path) == config

    def test_empty_yaml_is_an_empty_dict(self, temp_dir):
        path = os.path.join(temp_dir, "empty.yaml")
        open(path, "w").close()
        assert load_config(path) == {}

    def test_unsupported_format(self, temp_dir):
        path = os.path.join(temp_dir, "config.toml")
        open(path, "w").close()
        with pytest.raises(ValueError):
            load_config(path)
        with pytest.raises(ValueError):
            save_config({}, path)

    def test_missing_file(self, temp_dir):
        with pytest.raises(FileNotFoundError):
            load_config(os.path.join(temp_dir, "absent.yaml"))

    def test_run_directories_do_not_collide(self, temp_dir):
        first = create_run_directory(temp_dir, run_prefix="radialrep_run")
        second = create_run_directory(temp_dir, run_prefix="radialrep_run")
        assert first != second
        assert os.path.isdir(first) and os.path.isdir(second)
        assert os.path.basename(first).startswith("radialrep_run_")
