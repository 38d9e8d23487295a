"""
Theorem reports: per-point comparison tables, verdicts and their JSON/CSV forms.
"""

import csv
import datetime
import io
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from radialrep import __version__
from radialrep.core.extreal import format_value

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"

CLOSURE_SURROGATE_BANNER = (
    "sequential weak closure replaced by per-cell closure membership of the constraint set"
)
METRIC_EQUIVALENCE_BANNER = (
    "sequential relaxation computed with the lsc envelope estimator (they coincide on metric spaces)"
)
HYPOTHESES_NOT_ENFORCED_BANNER = "hypotheses were NOT enforced for this run"


def json_value(value: Any) -> Any:
    """JSON-safe form: +inf becomes "inf", numpy scalars and arrays become Python values."""
    if isinstance(value, dict):
        return {str(k): json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_value(v) for v in value]
    if isinstance(value, np.ndarray):
        return [json_value(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    if hasattr(value, "to_json"):
        return value.to_json()
    return value


def one_sided_gap(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """max(lhs - rhs, 0) for inequality statements lhs <= rhs, with inf <= inf allowed."""
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    with np.errstate(invalid="ignore"):
        excess = np.maximum(lhs - rhs, 0.0)
    return np.where(np.isinf(lhs) & np.isinf(rhs), 0.0, excess)


def gaps_nonincreasing(resolutions: Sequence[Dict[str, Any]], slack: float = 0.0) -> bool:
    """True iff the max gap never grows by more than `slack` from one resolution to the next."""
    gaps = [float(r["max_gap"]) for r in resolutions]
    return all(b <= a + slack for a, b in zip(gaps, gaps[1:]))


@dataclass
class TheoremReport:
    """
    Per-point comparison table for one statement.

    The verdict is pass iff every gap at the finest resolution is within the
    tolerance and every entry of `checks` holds. Verifiers put statement-level
    conditions there, such as the gap not growing across `resolutions`.
    """

    statement_id: str
    rows: List[Dict[str, Any]]
    tolerance: float
    resolutions: List[Dict[str, Any]] = field(default_factory=list)
    hypotheses: Dict[str, Any] = field(default_factory=dict)
    banner: List[str] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)
    enforce_hypotheses: bool = True
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def max_gap(self) -> float:
        gaps = [float(r["gap"]) for r in self.rows]
        return max(gaps) if gaps else 0.0

    @property
    def verdict(self) -> str:
        within = all(float(r["gap"]) <= self.tolerance for r in self.rows)
        return PASS if within and all(self.checks.values()) else FAIL

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def witness(self) -> Optional[Dict[str, Any]]:
        """The row with the largest gap, if the report failed."""
        if self.passed or not self.rows:
            return None
        return max(self.rows, key=lambda r: float(r["gap"]))

    def body(self) -> Dict[str, Any]:
        """Deterministic part of the JSON report."""
        return json_value({
            "statement_id": self.statement_id,
            "verdict": self.verdict,
            "tolerance": self.tolerance,
            "max_gap": self.max_gap,
            "resolutions": self.resolutions,
            "hypotheses": self.hypotheses,
            "hypotheses_enforced": self.enforce_hypotheses,
            "banner": self.banner,
            "checks": self.checks,
            "metadata": self.metadata,
            "rows": self.rows,
        })

    def to_json(self, timestamp: Optional[str] = None) -> str:
        header = {
            "generated_at": timestamp or datetime.datetime.now().isoformat(timespec="seconds"),
            "tool": "radialrep",
            "version": __version__,
        }
        return json.dumps({"header": header, "body": self.body()}, indent=2, sort_keys=True)

    def csv_columns(self) -> List[str]:
        dim = max((len(r.get("point", [])) for r in self.rows), default=0)
        extra = sorted({k for r in self.rows for k in r} - {"point", "lhs", "rhs", "gap"})
        return [f"point_{i}" for i in range(dim)] + ["lhs", "rhs", "gap"] + extra

    def to_csv(self) -> str:
        """CSV body: one row per sampled point, stable number formatting, no timestamps."""
        columns = self.csv_columns()
        dim = sum(1 for c in columns if c.startswith("point_"))
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in self.rows:
            point = list(row.get("point", []))
            cells = [format_value(float(x)) for x in point] + [""] * (dim - len(point))
            for key in columns[dim:]:
                value = row.get(key, "")
                if isinstance(value, (float, int, np.floating, np.integer)) and not isinstance(value, bool):
                    cells.append(format_value(float(value)))
                else:
                    cells.append(str(value))
            writer.writerow(cells)
        return buffer.getvalue()

    def summary(self) -> str:
        failed = [name for name, ok in self.checks.items() if not ok]
        return (
            f"{self.statement_id}: {self.verdict} (max gap {self.max_gap:.3e}, "
            f"tolerance {self.tolerance:.1e}, {len(self.rows)} points)"
            + (f"; failed checks: {', '.join(failed)}" if failed else "")
        )


def comparison_rows(
    points: np.ndarray,
    lhs: Sequence[float],
    rhs: Sequence[float],
    gaps: Sequence[float],
    **columns: Sequence[Any],
) -> List[Dict[str, Any]]:
    """Zip per-point arrays into report rows."""
    rows = []
    for i, point in enumerate(np.asarray(points, dtype=float)):
        row = {"point": point.tolist(), "lhs": float(lhs[i]), "rhs": float(rhs[i]), "gap": float(gaps[i])}
        for key, values in columns.items():
            value = values[i]
            row[key] = value.item() if isinstance(value, np.generic) else value
        rows.append(row)
    return rows
