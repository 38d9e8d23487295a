"""
Unit tests for the report_store module.
"""

import json
import os

from radialrep import __version__
from radialrep.analysis.reports import TheoremReport
from radialrep.runner.report_store import ReportStore
from radialrep.runner.verification_manager import EXIT_PASS, EXIT_REFUSED, REFUSED, SpecOutcome


def _passing_outcome(name="demo"):
    report = TheoremReport(
        statement_id="star_shape",
        rows=[{"point": [0.0, 0.5], "lhs": 0.0, "rhs": 0.0, "gap": 0.0}],
        tolerance=0.0,
        metadata={"problem": name},
    )
    return SpecOutcome(name=name, statement="star_shape", exit_code=EXIT_PASS, verdict=report.verdict, report=report)


def _refused_outcome(name="demo"):
    return SpecOutcome(
        name=name,
        statement="translate",
        exit_code=EXIT_REFUSED,
        verdict=REFUSED,
        message="Hypotheses of 'translate' not met",
        failed_hypotheses={"f": "refuted"},
    )


class TestReportStore:
    """Tests for the ReportStore class."""

    def test_passing_outcome_writes_json_and_csv(self, temp_dir):
        store = ReportStore(temp_dir)
        stored = store.add_outcome(_passing_outcome())
        paths = store.paths("demo")
        assert os.path.exists(paths["json"])
        assert os.path.exists(paths["csv"])
        with open(paths["json"]) as f:
            data = json.load(f)
        assert data["header"]["tool"] == "radialrep"
        assert data["header"]["version"] == __version__
        assert data["header"]["exit_code"] == EXIT_PASS
        assert data["body"]["verdict"] == "pass"
        assert stored.max_gap == 0.0
        with open(paths["csv"]) as f:
            assert f.readline().strip() == "point_0,point_1,lhs,rhs,gap"

    def test_refusal_has_no_csv(self, temp_dir):
        store = ReportStore(temp_dir)
        store.add_outcome(_refused_outcome())
        paths = store.paths("demo")
        assert not os.path.exists(paths["csv"])
        with open(paths["json"]) as f:
            body = json.load(f)["body"]
        assert body["verdict"] == REFUSED
        assert body["failed_hypotheses"] == {"f": "refuted"}
        assert store.reports["demo"].max_gap is None

    def test_refusal_replaces_a_stale_csv(self, temp_dir):
        store = ReportStore(temp_dir)
        store.add_outcome(_passing_outcome())
        store.add_outcome(_refused_outcome())
        assert not os.path.exists(store.paths("demo")["csv"])

    def test_existing_reports_are_loaded(self, temp_dir):
        store = ReportStore(temp_dir)
        store.add_outcome(_passing_outcome("a"))
        store.add_outcome(_refused_outcome("b"))

        reloaded = ReportStore(temp_dir)
        assert set(reloaded.reports) == {"a", "b"}
        assert reloaded.reports["a"].verdict == "pass"
        assert reloaded.reports["b"].exit_code == EXIT_REFUSED

    def test_unreadable_report_is_skipped(self, temp_dir):
        store = ReportStore(temp_dir)
        with open(os.path.join(store.reports_dir, "junk.json"), "w") as f:
            f.write("not json")
        store.add_outcome(_passing_outcome())
        reloaded = ReportStore(temp_dir)
        assert set(reloaded.reports) == {"demo"}

    def test_body_is_deterministic(self, temp_dir):
        first = ReportStore(os.path.join(temp_dir, "one"))
        second = ReportStore(os.path.join(temp_dir, "two"))
        first.add_outcome(_passing_outcome())
        second.add_outcome(_passing_outcome())
        with open(first.paths("demo")["csv"]) as f1, open(second.paths("demo")["csv"]) as f2:
            assert f1.read() == f2.read()
        with open(first.paths("demo")["json"]) as f1, open(second.paths("demo")["json"]) as f2:
            assert json.load(f1)["body"] == json.load(f2)["body"]
