"""
Function oracles: black-box maps into ]-inf, inf] with an explicit effective domain.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Union

import numpy as np

from radialrep.core.errors import DimensionMismatchError, NumericalBlowupError
from radialrep.core.extreal import ExtReal

logger = logging.getLogger(__name__)

ValuesFn = Callable[[np.ndarray], np.ndarray]
DomainFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FunctionProperties:
    """Analytic facts a catalog entry declares about itself; verifiers use them as ground truth."""

    convex: bool = False
    continuous: bool = False
    lower_bound: Optional[float] = None
    upper_bound: Optional[float] = None


def as_points(x: Any, dim: int) -> np.ndarray:
    """
    Normalize a point or a batch of points to an (N, dim) float array.

    Args:
        x: Scalar (dim 1), 1-D point, or (N, dim) array
        dim: Expected dimension

    Returns:
        Array of shape (N, dim)
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1) if dim == 1 and arr.shape[0] != 1 else arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise DimensionMismatchError(f"Expected points of dimension {dim}, got shape {np.shape(x)}")
    return arr


class FunctionOracle:
    """
    Pure evaluation map R^n -> ]-inf, inf] with an explicit effective domain.

    The values callable is only ever applied to points where the domain
    predicate holds; everywhere else the oracle answers +inf. A non-finite
    value inside the domain is a numerical blow-up and raises.
    """

    def __init__(
        self,
        name: str,
        dim: int,
        values: ValuesFn,
        domain: Optional[DomainFn] = None,
        properties: Optional[FunctionProperties] = None,
        params: Optional[Dict[str, Any]] = None,
        ref: Optional[Dict[str, Any]] = None,
    ):
        """
        Initialize the oracle.

        Args:
            name: Catalog name or composition label
            dim: Dimension n of the input space
            values: Vectorized map (N, n) -> (N,) evaluated on domain points only
            domain: Vectorized predicate (N, n) -> (N,) bool; None means all of R^n
            properties: Declared analytic properties
            params: Construction parameters, kept for reports
            ref: Catalog reference that rebuilds this oracle (its provenance tree)
        """
        if dim < 1:
            raise ValueError(f"Oracle dimension must be positive, got {dim}")
        self.name = name
        self.dim = dim
        self._values = values
        self._domain = domain
        self.properties = properties or FunctionProperties()
        self.params = dict(params or {})
        self.ref = ref

    def dom_mask(self, X: np.ndarray) -> np.ndarray:
        X = as_points(X, self.dim)
        if self._domain is None:
            return np.ones(X.shape[0], dtype=bool)
        return np.asarray(self._domain(X), dtype=bool)

    def dom_contains(self, x: Any) -> Union[bool, np.ndarray]:
        """True iff the oracle is finite at x (vectorized for batches)."""
        mask = self.dom_mask(x)
        return bool(mask[0]) if np.ndim(x) <= 1 and mask.shape[0] == 1 else mask

    def eval_batch(self, X: Any) -> np.ndarray:
        """
        Evaluate the oracle on a batch of points.

        Args:
            X: Points, shape (N, n)

        Returns:
            Float array of shape (N,) where np.inf marks points outside the domain
        """
        X = as_points(X, self.dim)
        mask = self.dom_mask(X)
        out = np.full(X.shape[0], np.inf)
        if mask.any():
            with np.errstate(all="ignore"):
                vals = np.asarray(self._values(X[mask]), dtype=float).reshape(-1)
            bad = ~np.isfinite(vals)
            if bad.any():
                where = X[mask][np.argmax(bad)]
                raise NumericalBlowupError(
                    f"Oracle '{self.name}' returned {vals[np.argmax(bad)]} inside its domain at {where.tolist()}"
                )
            out[mask] = vals
        return out

    def eval(self, x: Any) -> ExtReal:
        """Evaluate at a single point and return an ExtReal."""
        X = as_points(x, self.dim)
        if X.shape[0] != 1:
            raise DimensionMismatchError(f"eval expects a single point, got {X.shape[0]}")
        return ExtReal.from_float(float(self.eval_batch(X)[0]))

    def __call__(self, x: Any) -> ExtReal:
        return self.eval(x)

    def describe(self) -> Dict[str, Any]:
        if self.ref is not None:
            return self.ref
        return {"name": self.name, "dim": self.dim, "params": self.params}

    def __repr__(self) -> str:
        return f"FunctionOracle({self.name!r}, dim={self.dim})"


def evaluate(f: FunctionOracle, x: Any) -> ExtReal:
    """
    Evaluate f at x.

    Args:
        f: Oracle to evaluate
        x: Point with dim(x) = f.dim

    Returns:
        f(x), +inf iff x is outside dom f
    """
    return f.eval(x)
