"""Core modules for radialrep."""

from radialrep.core.errors import (
    DimensionMismatchError,
    DomainError,
    ExtRealArithmeticError,
    HypothesisNotMetError,
    NumericalBlowupError,
    ProblemSpecError,
    RadialRepError,
    SamplingError,
)
from radialrep.core.extreal import INF, ExtReal
from radialrep.core.oracle import FunctionOracle, FunctionProperties, evaluate
from radialrep.core.sampling import SampleSet, geometric_t_schedule, make_samples
from radialrep.core.tabulated import TabulatedOracle
