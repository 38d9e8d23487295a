import datetime
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from radialrep import __version__
from radialrep.analysis.reports import json_value
from radialrep.runner.verification_manager import SpecOutcome

logger = logging.getLogger(__name__)


@dataclass
class StoredReport:
    """A report as persisted on disk."""

    name: str
    statement: str
    verdict: str
    exit_code: int
    body: Dict[str, Any]
    timestamp: str = field(default_factory=lambda: datetime.datetime.now().isoformat(timespec="seconds"))

    @property
    def max_gap(self) -> Optional[float]:
        gap = self.body.get("max_gap")
        return float(gap) if isinstance(gap, (int, float)) else None


class ReportStore:
    """
    Keeps every outcome of a run as `reports/<name>.json` and `reports/<name>.csv`.

    The JSON header holds the timestamp and tool version; the body and the CSV
    are deterministic for a given problem and seed.
    """

    def __init__(self, results_dir: str):
        """
        Initialize the Report Store.

        Args:
            results_dir: Directory to store reports in (created if missing)
        """
        self.results_dir = results_dir
        self.reports_dir = os.path.join(results_dir, "reports")
        os.makedirs(self.reports_dir, exist_ok=True)
        self.reports: Dict[str, StoredReport] = {}
        self._load_existing_reports()

    def _load_existing_reports(self) -> None:
        for filename in sorted(os.listdir(self.reports_dir)):
            if not filename.endswith(".json"):
                continue
            try:
                with open(os.path.join(self.reports_dir, filename), "r", encoding="utf-8") as f:
                    data = json.load(f)
                body = data["body"]
                stored = StoredReport(
                    name=body.get("metadata", {}).get("problem", filename[:-5]),
                    statement=body["statement_id"],
                    verdict=body["verdict"],
                    exit_code=int(data["header"].get("exit_code", -1)),
                    body=body,
                    timestamp=data["header"]["generated_at"],
                )
                self.reports[filename[:-5]] = stored
            except Exception as e:
                logger.error(f"Error loading report {filename}: {str(e)}")
        if self.reports:
            logger.info(f"Loaded {len(self.reports)} existing reports from {self.reports_dir}")

    def paths(self, name: str) -> Dict[str, str]:
        base = os.path.join(self.reports_dir, name)
        return {"json": base + ".json", "csv": base + ".csv"}

    def add_outcome(self, outcome: SpecOutcome) -> StoredReport:
        """Persist one outcome; refusals and errors get a JSON file without a CSV table."""
        if outcome.report is not None:
            body = outcome.report.body()
        else:
            body = json_value({
                "statement_id": outcome.statement,
                "verdict": outcome.verdict,
                "message": outcome.message,
                "failed_hypotheses": outcome.failed_hypotheses,
                "metadata": {"problem": outcome.name},
            })
        stored = StoredReport(
            name=outcome.name,
            statement=outcome.statement,
            verdict=outcome.verdict,
            exit_code=outcome.exit_code,
            body=body,
        )
        self.reports[outcome.name] = stored
        self._save_report(stored, outcome.report.to_csv() if outcome.report is not None else None)
        return stored

    def _save_report(self, stored: StoredReport, csv_text: Optional[str]) -> None:
        paths = self.paths(stored.name)
        header = {
            "generated_at": stored.timestamp,
            "tool": "radialrep",
            "version": __version__,
            "exit_code": stored.exit_code,
        }
        with open(paths["json"], "w", encoding="utf-8") as f:
            json.dump({"header": header, "body": stored.body}, f, indent=2, sort_keys=True)
        if csv_text is not None:
            with open(paths["csv"], "w", encoding="utf-8", newline="") as f:
                f.write(csv_text)
        elif os.path.exists(paths["csv"]):
            os.remove(paths["csv"])
        logger.debug(f"Wrote {paths['json']}")
