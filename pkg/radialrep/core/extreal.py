"""
Extended reals in ]-inf, +inf].

Scalar values are `ExtReal` objects where +inf is an explicit tag rather
than a float that leaked out of an overflow. Vectorized code works on numpy
arrays in which `np.inf` stands for the tag; those arrays are only ever
produced by `FunctionOracle.eval_batch`, which writes +inf exclusively where
the domain predicate is false.
"""

import functools
import math
from typing import Union

import numpy as np

from radialrep.core.errors import ExtRealArithmeticError, NumericalBlowupError

Number = Union[int, float]


@functools.total_ordering
class ExtReal:
    """A finite real or +inf. -inf is never a value."""

    __slots__ = ("_value",)

    def __init__(self, value: Number):
        value = float(value)
        if not math.isfinite(value):
            raise NumericalBlowupError(
                f"ExtReal got non-finite float {value!r}; use ExtReal.infinity() for +inf"
            )
        self._value = value

    @classmethod
    def infinity(cls) -> "ExtReal":
        obj = object.__new__(cls)
        obj._value = None
        return obj

    @classmethod
    def from_float(cls, value: float) -> "ExtReal":
        """Convert a validated float where +inf means the tag."""
        if value == math.inf:
            return cls.infinity()
        return cls(value)

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def value(self) -> float:
        """The float view: the finite value or math.inf."""
        return math.inf if self._value is None else self._value

    def __float__(self) -> float:
        return self.value

    def _coerce(self, other) -> "ExtReal":
        if isinstance(other, ExtReal):
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return ExtReal(other)
        return NotImplemented

    def __add__(self, other) -> "ExtReal":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.is_finite or not other.is_finite:
            return ExtReal.infinity()
        return ExtReal(self._value + other._value)

    __radd__ = __add__

    def __sub__(self, other) -> "ExtReal":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.is_finite:
            if not self.is_finite:
                raise ExtRealArithmeticError("inf - inf is undefined")
            raise ExtRealArithmeticError("finite - inf would be -inf, which is not representable")
        if not self.is_finite:
            return ExtReal.infinity()
        return ExtReal(self._value - other._value)

    def __rsub__(self, other) -> "ExtReal":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other) -> "ExtReal":
        if isinstance(other, ExtReal):
            if other.is_finite:
                return self * other._value
            return other * self.value if self.is_finite else ExtReal.infinity()
        if not isinstance(other, (int, float, np.floating, np.integer)):
            return NotImplemented
        scalar = float(other)
        if self.is_finite:
            return ExtReal(self._value * scalar)
        if scalar < 0:
            raise ExtRealArithmeticError("negative multiple of inf would be -inf")
        # 0 * inf = inf keeps the effective domain unchanged under scaling.
        return ExtReal.infinity()

    __rmul__ = __mul__

    def __neg__(self) -> "ExtReal":
        if not self.is_finite:
            raise ExtRealArithmeticError("-inf is not representable")
        return ExtReal(-self._value)

    def __abs__(self) -> "ExtReal":
        return self if not self.is_finite else ExtReal(abs(self._value))

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtReal):
            return self._value == other._value
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self.value == float(other)
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, ExtReal):
            return self.value < other.value
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self.value < float(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return "ExtReal(inf)" if self._value is None else f"ExtReal({self._value!r})"

    def to_json(self) -> Union[float, str]:
        return "inf" if self._value is None else self._value


INF = ExtReal.infinity()


def gap(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """
    Absolute difference of extended-real arrays with inf = inf counting as 0.

    Args:
        lhs: Array of values in ]-inf, inf]
        rhs: Array of values in ]-inf, inf]

    Returns:
        |lhs - rhs| elementwise, 0 where both are +inf and +inf where exactly one is
    """
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    both_inf = np.isinf(lhs) & np.isinf(rhs)
    with np.errstate(invalid="ignore"):
        out = np.abs(lhs - rhs)
    return np.where(both_inf, 0.0, out)


def format_value(value: float) -> str:
    """Stable text form used in every CSV body."""
    if value == math.inf:
        return "inf"
    if value == -math.inf:
        return "-inf"
    if math.isnan(value):
        return "nan"
    return repr(float(value))
