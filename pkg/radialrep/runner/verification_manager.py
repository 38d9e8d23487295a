"""
Verification manager: runs problems on a thread pool and maps results to exit codes.
"""

import asyncio
import concurrent.futures
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from radialrep.analysis.reports import TheoremReport
from radialrep.core.errors import (
    DimensionMismatchError,
    DomainError,
    ExtRealArithmeticError,
    HypothesisNotMetError,
    NumericalBlowupError,
    ProblemSpecError,
    SamplingError,
)
from radialrep.runner.problem import ProblemSpec
from radialrep.runner.statements import run_statement

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_REFUSED = 2
EXIT_SPEC_ERROR = 3

REFUSED = "refused"
ERROR = "error"


@dataclass
class SpecOutcome:
    """Result of running one problem: a report, or the reason there is none."""

    name: str
    statement: str
    exit_code: int
    verdict: str
    report: Optional[TheoremReport] = None
    runtime_s: float = 0.0
    message: str = ""
    failed_hypotheses: Dict[str, Any] = field(default_factory=dict)
    expect: Optional[str] = None

    @property
    def max_gap(self) -> Optional[float]:
        return self.report.max_gap if self.report is not None else None

    @property
    def matches_expectation(self) -> bool:
        return self.expect is None or self.expect == self.verdict


def exit_code_for(error: Exception) -> int:
    """Map a library exception to the CLI exit code contract."""
    if isinstance(error, (HypothesisNotMetError, DomainError)):
        return EXIT_REFUSED
    if isinstance(error, (NumericalBlowupError, ExtRealArithmeticError)):
        return EXIT_FAIL
    return EXIT_SPEC_ERROR


class VerificationManager:
    """
    Runs problems against the statement registry.

    Problems are independent, so batches run in parallel on a thread pool;
    numpy releases the GIL for most of the work.
    """

    def __init__(
        self,
        config: Optional[Dict[str, Any]] = None,
        max_workers: int = 4,
        seed: Optional[int] = None,
        resolution_scale: int = 1,
    ):
        """
        Initialize the Verification Manager.

        Args:
            config: Effective configuration (sections sampling, envelope, certification, radial)
            max_workers: Maximum number of problems verified at once
            seed: Overrides every problem's seed when set
            resolution_scale: Multiplies every sample count
        """
        self.config = config or {}
        self.max_workers = max(1, int(max_workers))
        self.seed = seed
        self.resolution_scale = resolution_scale
        self.executor = concurrent.futures.ThreadPoolExecutor(max_workers=self.max_workers)

    def run_sync(self, spec: ProblemSpec) -> SpecOutcome:
        """Verify one problem in the calling thread."""
        start_time = time.perf_counter()
        outcome = SpecOutcome(name=spec.name, statement=spec.statement, exit_code=EXIT_SPEC_ERROR, verdict=ERROR, expect=spec.expect)
        try:
            effective = spec.with_overrides(seed=self.seed, resolution_scale=self.resolution_scale)
            report = run_statement(effective, self.config)
            outcome.report = report
            outcome.verdict = report.verdict
            outcome.exit_code = EXIT_PASS if report.passed else EXIT_FAIL
            logger.info(f"'{spec.name}': {report.verdict} (max gap {report.max_gap:.3e})")
        except HypothesisNotMetError as e:
            outcome.exit_code = EXIT_REFUSED
            outcome.verdict = REFUSED
            outcome.message = str(e)
            outcome.failed_hypotheses = dict(e.failed)
            logger.warning(f"'{spec.name}' refused: {e}")
        except (ProblemSpecError, SamplingError, DimensionMismatchError) as e:
            outcome.message = str(e)
            logger.error(f"'{spec.name}' is not runnable: {e}")
        except (DomainError, NumericalBlowupError, ExtRealArithmeticError) as e:
            outcome.exit_code = exit_code_for(e)
            outcome.verdict = REFUSED if outcome.exit_code == EXIT_REFUSED else ERROR
            outcome.message = str(e)
            logger.error(f"'{spec.name}' stopped: {e}")
        except Exception as e:
            outcome.message = f"internal error: {e}"
            logger.error(f"Unexpected error while verifying '{spec.name}': {e}", exc_info=True)
        outcome.runtime_s = time.perf_counter() - start_time
        return outcome

    async def run(self, spec: ProblemSpec) -> SpecOutcome:
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(self.executor, self.run_sync, spec)

    async def batch_run(
        self,
        specs: List[ProblemSpec],
        max_concurrent: Optional[int] = None,
        on_done: Optional[Callable[[SpecOutcome], None]] = None,
    ) -> List[SpecOutcome]:
        """
        Verify several problems in parallel.

        Args:
            specs: Problems to verify
            max_concurrent: Maximum number of concurrent runs (defaults to self.max_workers)
            on_done: Called with each outcome as it finishes

        Returns:
            Outcomes in the order of `specs`
        """
        semaphore = asyncio.Semaphore(max_concurrent or self.max_workers)

        async def _run_with_semaphore(spec: ProblemSpec) -> SpecOutcome:
            async with semaphore:
                outcome = await self.run(spec)
            if on_done is not None:
                on_done(outcome)
            return outcome

        return await asyncio.gather(*[_run_with_semaphore(spec) for spec in specs])

    def cleanup(self) -> None:
        self.executor.shutdown(wait=True)
