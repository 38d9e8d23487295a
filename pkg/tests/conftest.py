"""
Pytest configuration file for radialrep tests.
"""

import os
import shutil
import sys
import tempfile
from typing import Any, Dict, Generator

import pytest
from hypothesis import HealthCheck, settings

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from radialrep.catalog import build_function, build_region

settings.register_profile("dev", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", parent=settings.get_profile("dev"), max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))

PROBLEMS_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'problems'))

CROSS = {
    "name": "union_of_convex",
    "params": {
        "first": {"name": "box", "params": {"lo": [-1.0, -0.5], "hi": [1.0, 0.5]}},
        "second": {"name": "box", "params": {"lo": [-0.5, -1.0], "hi": [0.5, 1.0]}},
        "center": [0.0, 0.0],
    },
}


@pytest.fixture
def temp_dir() -> Generator[str, None, None]:
    """Create a temporary directory for tests."""
    temp_dir = tempfile.mkdtemp()
    yield temp_dir
    shutil.rmtree(temp_dir)


@pytest.fixture
def problems_dir() -> str:
    return PROBLEMS_DIR


@pytest.fixture
def cross_region():
    """Union of two overlapping boxes, strongly star-shaped about the origin."""
    return build_region(CROSS)


@pytest.fixture
def unit_box():
    return build_region({"name": "box", "params": {"lo": [-1.0, -1.0], "hi": [1.0, 1.0]}})


@pytest.fixture
def cubic():
    """x^2 + y^2 + x y^3."""
    return build_function("cubic_coupling")


@pytest.fixture
def norm_squared():
    return build_function({"name": "norm_power", "params": {"dim": 2, "p": 2.0}})


@pytest.fixture
def sample_config() -> Dict[str, Any]:
    """A configuration small enough for unit tests."""
    return {
        "sampling": {"interior": 32, "boundary": 16, "star_k_max": 20},
        "envelope": {"r0": 1.0, "levels": 12, "samples_per_shell": 32, "seed": 0},
        "certification": {"k_max": 40, "eps_cert": 1e-6, "tail": 5, "a_candidates": None},
        "radial": {"window": 8, "tolerance": 1e-6, "lsc_tol": 1e-3, "scales": [1, 2]},
        "runner": {"max_workers": 2, "output_dir": "./results", "progress": False},
    }
