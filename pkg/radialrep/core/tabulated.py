import csv
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from radialrep.core.errors import DimensionMismatchError, SamplingError
from radialrep.core.extreal import format_value
from radialrep.core.oracle import FunctionOracle, FunctionProperties, as_points
from radialrep.core.sampling import SampleSet

logger = logging.getLogger(__name__)


class TabulatedOracle(FunctionOracle):
    """
    Oracle defined by values on a regular 1-D or 2-D grid.

    Node values are returned exactly. Off-grid points inside the grid hull are
    linearly interpolated when every node with positive weight is finite;
    otherwise, and outside the hull, the value is +inf.
    """

    def __init__(
        self,
        name: str,
        axes: Sequence[np.ndarray],
        values: np.ndarray,
        properties: Optional[FunctionProperties] = None,
        params: Optional[Dict[str, Any]] = None,
        ref: Optional[Dict[str, Any]] = None,
    ):
        self.axes = tuple(np.asarray(a, dtype=float) for a in axes)
        if len(self.axes) not in (1, 2):
            raise DimensionMismatchError(f"Tabulated oracles support 1-D and 2-D grids, got {len(self.axes)}-D")
        shape = tuple(a.shape[0] for a in self.axes)
        self.table = np.asarray(values, dtype=float).reshape(shape)
        if np.any(np.isnan(self.table)) or np.any(self.table == -np.inf):
            raise SamplingError("Tabulated values must lie in ]-inf, inf]")
        self.lo = np.array([a[0] for a in self.axes])
        self.hi = np.array([a[-1] for a in self.axes])

        finite = np.isfinite(self.table)
        self._finite_interp = RegularGridInterpolator(self.axes, finite.astype(float), method="linear")
        self._value_interp = RegularGridInterpolator(self.axes, np.where(finite, self.table, 0.0), method="linear")

        super().__init__(
            name=name,
            dim=len(self.axes),
            values=self._tabulated_values,
            domain=self._tabulated_domain,
            properties=properties,
            params=params,
            ref=ref,
        )

    @classmethod
    def from_oracle(cls, f: FunctionOracle, grid: SampleSet, name: Optional[str] = None) -> "TabulatedOracle":
        """Tabulate f on the nodes of a uniform grid."""
        if grid.axes is None:
            raise SamplingError("Tabulation needs a uniform-grid sample set")
        values = f.eval_batch(grid.points)
        return cls(
            name=name or f"table({f.name})",
            axes=grid.axes,
            values=values,
            properties=FunctionProperties(continuous=False, lower_bound=f.properties.lower_bound),
            params={"grid": grid.provenance},
        )

    def node_indices(self, X: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Per-point grid index and a mask of points that sit exactly on a node."""
        on_node = np.ones(X.shape[0], dtype=bool)
        idx = np.zeros(X.shape, dtype=int)
        for i, axis in enumerate(self.axes):
            j = np.clip(np.searchsorted(axis, X[:, i]), 0, axis.shape[0] - 1)
            idx[:, i] = j
            on_node &= axis[j] == X[:, i]
        return idx, on_node

    def interpolated(self, X: Any) -> np.ndarray:
        """True where the value at X comes from interpolation rather than a stored node."""
        X = as_points(X, self.dim)
        _, on_node = self.node_indices(X)
        return ~on_node

    def _in_hull(self, X: np.ndarray) -> np.ndarray:
        return np.all((X >= self.lo) & (X <= self.hi), axis=1)

    def _tabulated_domain(self, X: np.ndarray) -> np.ndarray:
        inside = self._in_hull(X)
        out = np.zeros(X.shape[0], dtype=bool)
        if inside.any():
            Y = X[inside]
            idx, on_node = self.node_indices(Y)
            ok = np.empty(Y.shape[0], dtype=bool)
            ok[on_node] = np.isfinite(self.table[tuple(idx[on_node].T)])
            off = ~on_node
            if off.any():
                ok[off] = self._finite_interp(Y[off]) >= 1.0 - 1e-12
            out[inside] = ok
        return out

    def _tabulated_values(self, X: np.ndarray) -> np.ndarray:
        idx, on_node = self.node_indices(X)
        vals = np.empty(X.shape[0])
        vals[on_node] = self.table[tuple(idx[on_node].T)]
        off = ~on_node
        if off.any():
            vals[off] = self._value_interp(X[off])
        return vals

    def node_points(self) -> np.ndarray:
        mesh = np.meshgrid(*self.axes, indexing="ij")
        return np.stack([m.reshape(-1) for m in mesh], axis=1)

    def to_csv(self, path: str) -> None:
        """
        Write (node, value) rows.

        Args:
            path: Output CSV path; columns x0[, x1], value
        """
        header = [f"x{i}" for i in range(self.dim)] + ["value"]
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(header)
            for node, value in zip(self.node_points(), self.table.reshape(-1)):
                writer.writerow([format_value(c) for c in node] + [format_value(value)])
        logger.info(f"Tabulated oracle '{self.name}' written to {path}")

    @classmethod
    def from_csv(cls, path: str, name: Optional[str] = None) -> "TabulatedOracle":
        """Read a table written by to_csv; the axes are recovered from the node columns."""
        rows: List[List[float]] = []
        with open(path, "r", newline="", encoding="utf-8") as f:
            reader = csv.reader(f)
            header = next(reader)
            for row in reader:
                rows.append([float(v) for v in row])
        if not rows:
            raise SamplingError(f"No rows in tabulated CSV {path}")
        data = np.asarray(rows)
        dim = len(header) - 1
        axes = [np.unique(data[:, i]) for i in range(dim)]
        table = np.full(tuple(a.shape[0] for a in axes), np.nan)
        index = tuple(np.searchsorted(axes[i], data[:, i]) for i in range(dim))
        table[index] = data[:, -1]
        if np.any(np.isnan(table)):
            raise SamplingError(f"Tabulated CSV {path} does not cover a full grid")
        return cls(name=name or path, axes=axes, values=table)
