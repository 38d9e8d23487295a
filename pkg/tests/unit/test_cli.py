"""
Unit tests for the command-line interface.
"""

import json
import os

import pytest

from radialrep.cli.radialrep import main


def _exit_code(argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    return excinfo.value.code


class TestCli:
    """Tests for the radialrep command."""

    def test_list(self, capsys):
        assert _exit_code(["list"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("Statements:")
        assert "  radial_representation" in out
        assert "Functions:" in out
        assert "Constraint sets:" in out

    def test_no_command_prints_help(self, capsys):
        assert _exit_code([]) == 3
        assert "usage" in capsys.readouterr().out

    def test_run_pass(self, temp_dir, problems_dir):
        out = os.path.join(temp_dir, "run")
        spec = os.path.join(problems_dir, "acceptance", "translate_quadratic.json")
        assert _exit_code(["run", "--spec", spec, "--out", out, "--no-progress"]) == 0
        with open(os.path.join(out, "reports", "translate_quadratic.json")) as f:
            assert json.load(f)["header"]["exit_code"] == 0
        assert os.path.exists(os.path.join(out, "config.yaml"))

    def test_run_refused(self, temp_dir, problems_dir):
        spec = os.path.join(problems_dir, "refusals", "scale_negative.json")
        assert _exit_code(["run", "--spec", spec, "--out", temp_dir, "--no-progress"]) == 2

    def test_run_missing_spec(self, temp_dir):
        assert _exit_code(["run", "--spec", os.path.join(temp_dir, "absent.json"), "--out", temp_dir]) == 3

    def test_empty_suite(self, temp_dir, problems_dir):
        suite = os.path.join(problems_dir, "empty_suite.yaml")
        assert _exit_code(["suite", "--suite", suite, "--out", temp_dir, "--no-progress"]) == 3

    def test_seed_must_fit_in_64_bits(self, temp_dir, problems_dir):
        spec = os.path.join(problems_dir, "acceptance", "translate_quadratic.json")
        assert _exit_code(["run", "--spec", spec, "--out", temp_dir, "--seed", str(2 ** 64)]) == 2
        assert _exit_code(["run", "--spec", spec, "--out", temp_dir, "--seed", "-1"]) == 2

    def test_threads_must_be_positive(self, temp_dir, problems_dir):
        spec = os.path.join(problems_dir, "acceptance", "translate_quadratic.json")
        assert _exit_code(["run", "--spec", spec, "--out", temp_dir, "--threads", "0"]) == 2
