"""Problem files, the statement registry and the parallel suite runner."""

from radialrep.runner.problem import ProblemSpec, load_problem
from radialrep.runner.statements import list_statements, run_statement
from radialrep.runner.verification_manager import SpecOutcome, VerificationManager
from radialrep.runner.report_store import ReportStore
from radialrep.runner.controller import SuiteController, load_suite
