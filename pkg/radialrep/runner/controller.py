"""
Suite controller: loads suites, dispatches their problems and writes summary.csv.
"""

import csv
import logging
import os
from typing import Any, Dict, List, Tuple, Union

from tqdm import tqdm

from radialrep.core.errors import ProblemSpecError
from radialrep.core.extreal import format_value
from radialrep.core.utils import load_config
from radialrep.runner.problem import ProblemSpec, load_problem
from radialrep.runner.report_store import ReportStore
from radialrep.runner.verification_manager import ERROR, EXIT_SPEC_ERROR, SpecOutcome, VerificationManager

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ["name", "statement", "verdict", "exit_code", "max_gap", "runtime_s"]

SuiteEntry = Union[ProblemSpec, SpecOutcome]


def load_suite(path: str) -> List[SuiteEntry]:
    """
    Read a suite file: a YAML/JSON list of problem paths, or an object with a `specs` list.

    Paths are relative to the suite file. A member that fails to load becomes a
    spec-error outcome so the rest of the suite still runs.
    """
    if not os.path.exists(path):
        raise ProblemSpecError("suite", f"file not found: {path}")
    try:
        data = load_config(path)
    except Exception as e:
        raise ProblemSpecError("suite", f"cannot parse {path}: {e}") from e
    if isinstance(data, dict):
        data = data.get("specs", [])
    if not isinstance(data, list):
        raise ProblemSpecError("suite", "expected a list of problem paths")

    base = os.path.dirname(os.path.abspath(path))
    entries: List[SuiteEntry] = []
    for i, item in enumerate(data):
        if not isinstance(item, str):
            raise ProblemSpecError(f"suite[{i}]", "must be a path")
        member = item if os.path.isabs(item) else os.path.join(base, item)
        try:
            entries.append(load_problem(member))
        except ProblemSpecError as e:
            logger.error(f"Suite member {item} is invalid: {e}")
            name = os.path.splitext(os.path.basename(item))[0]
            entries.append(SpecOutcome(name=name, statement="", exit_code=EXIT_SPEC_ERROR, verdict=ERROR, message=str(e)))
    logger.info(f"Loaded suite {path} with {len(entries)} problems")
    return entries


class SuiteController:
    """Dispatches problems to the verification manager and records the outcomes."""

    def __init__(self, manager: VerificationManager, store: ReportStore, show_progress: bool = True):
        self.manager = manager
        self.store = store
        self.show_progress = show_progress

    def run_one(self, spec: ProblemSpec) -> SpecOutcome:
        outcome = self.manager.run_sync(spec)
        self.store.add_outcome(outcome)
        self._check_expectation(outcome)
        return outcome

    async def run_suite(self, entries: List[SuiteEntry]) -> Tuple[int, List[SpecOutcome]]:
        """
        Verify every problem of a suite in parallel and write summary.csv.

        Returns:
            (worst exit code, outcomes in suite order); an empty suite gives exit code 3
        """
        if not entries:
            logger.error("Suite is empty")
            return EXIT_SPEC_ERROR, []

        specs = [e for e in entries if isinstance(e, ProblemSpec)]
        progress = tqdm(total=len(specs), desc="Verifying", unit="problem", disable=not self.show_progress)
        try:
            finished = iter(await self.manager.batch_run(specs, on_done=lambda _: progress.update(1)))
        finally:
            progress.close()

        outcomes = [next(finished) if isinstance(e, ProblemSpec) else e for e in entries]
        # Report files are written from this task only.
        for outcome in outcomes:
            self.store.add_outcome(outcome)
            self._check_expectation(outcome)

        self.write_summary(outcomes)
        worst = max(o.exit_code for o in outcomes)
        logger.info(f"Suite finished: {sum(o.exit_code == 0 for o in outcomes)}/{len(outcomes)} passed, exit code {worst}")
        return worst, outcomes

    def write_summary(self, outcomes: List[SpecOutcome]) -> str:
        path = os.path.join(self.store.results_dir, "summary.csv")
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
            writer.writeheader()
            for row in self.summary_rows(outcomes):
                gap = row["max_gap"]
                writer.writerow({
                    **row,
                    "max_gap": format_value(gap) if gap is not None else "",
                    "runtime_s": f"{row['runtime_s']:.3f}",
                })
        logger.info(f"Summary written to {path}")
        return path

    @staticmethod
    def _check_expectation(outcome: SpecOutcome) -> None:
        if not outcome.matches_expectation:
            logger.warning(f"'{outcome.name}' expected {outcome.expect}, got {outcome.verdict}")

    def summary_rows(self, outcomes: List[SpecOutcome]) -> List[Dict[str, Any]]:
        """One dict per outcome, keyed by SUMMARY_COLUMNS."""
        return [
            {
                "name": o.name,
                "statement": o.statement,
                "verdict": o.verdict,
                "exit_code": o.exit_code,
                "max_gap": o.max_gap,
                "runtime_s": o.runtime_s,
            }
            for o in outcomes
        ]
