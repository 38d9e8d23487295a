"""Exception hierarchy shared by every radialrep module."""

from typing import Any, Dict, Optional


class RadialRepError(Exception):
    """Base class for all radialrep errors."""


class DimensionMismatchError(RadialRepError, ValueError):
    """A point does not have the dimension its oracle or region expects."""


class NumericalBlowupError(RadialRepError, ArithmeticError):
    """An oracle returned a non-finite value inside its declared domain."""


class ExtRealArithmeticError(RadialRepError, ArithmeticError):
    """Undefined operation on extended reals, such as inf - inf."""


class DomainError(RadialRepError, ValueError):
    """Samples violate a standing hypothesis such as D being inside dom f."""


class SamplingError(RadialRepError, ValueError):
    """A sample set could not be built (empty box, starved rejection...)."""


class HypothesisNotMetError(RadialRepError):
    """
    The hypotheses of a statement failed their machine check.

    Verifiers refuse to run in that case so that a failing verdict always
    means a numerical counterexample candidate.
    """

    def __init__(self, statement_id: str, failed: Optional[Dict[str, Any]] = None):
        self.statement_id = statement_id
        self.failed = failed or {}
        details = ", ".join(f"{name}: {reason}" for name, reason in self.failed.items())
        super().__init__(f"Hypotheses of '{statement_id}' not met ({details})")


class ProblemSpecError(RadialRepError, ValueError):
    """A problem file is malformed; `field` names the offending entry."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
