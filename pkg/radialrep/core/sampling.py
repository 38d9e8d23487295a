"""
Deterministic point sets.

Every sampler here is a pure function of its provenance parameters: a
uniform grid is fixed by (box, resolution) and a low-discrepancy set by
(box, count, seed) through scipy's scrambled Halton engine.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import norm, qmc

from radialrep.core.errors import SamplingError

logger = logging.getLogger(__name__)

UNIFORM_GRID = "uniform-grid"
LOW_DISCREPANCY = "low-discrepancy"
USER_SUPPLIED = "user-supplied"


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Ordered finite list of points with the parameters that produced it."""

    points: np.ndarray
    provenance: Dict[str, Any] = field(default_factory=lambda: {"kind": USER_SUPPLIED})
    axes: Optional[Tuple[np.ndarray, ...]] = None

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def __iter__(self):
        return iter(self.points)

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    @property
    def seed(self) -> Optional[int]:
        return self.provenance.get("seed")

    def concat(self, other: "SampleSet") -> "SampleSet":
        return SampleSet(
            points=np.vstack([self.points, other.points]),
            provenance={"kind": "concat", "parts": [self.provenance, other.provenance]},
        )

    def subset(self, mask: np.ndarray) -> "SampleSet":
        return SampleSet(
            points=self.points[np.asarray(mask, dtype=bool)],
            provenance={"kind": "subset", "of": self.provenance},
        )


def normalize_box(box: Any) -> Tuple[np.ndarray, np.ndarray]:
    """
    Turn a box descriptor into (lo, hi) arrays.

    Accepts [lo, hi] for one axis or [[lo1, hi1], [lo2, hi2], ...].
    """
    arr = np.asarray(box, dtype=float)
    if arr.ndim == 1 and arr.shape[0] == 2:
        arr = arr.reshape(1, 2)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] == 0:
        raise SamplingError(f"Malformed box {box!r}; expected [lo, hi] or a list of [lo, hi] pairs")
    lo, hi = arr[:, 0], arr[:, 1]
    if np.any(~np.isfinite(arr)):
        raise SamplingError(f"Box bounds must be finite, got {box!r}")
    if np.any(lo > hi):
        raise SamplingError(f"Empty box: lower bound exceeds upper bound in {box!r}")
    return lo, hi


def uniform_grid(box: Any, resolution: Any) -> SampleSet:
    """
    Tensor grid with `resolution` nodes per axis, endpoints included.

    Args:
        box: Box descriptor
        resolution: Nodes per axis (int or one int per axis), each >= 2

    Returns:
        SampleSet in C order (last axis varies fastest) with the grid axes attached
    """
    lo, hi = normalize_box(box)
    res = np.broadcast_to(np.asarray(resolution, dtype=int), lo.shape)
    if np.any(res < 2):
        raise SamplingError(f"Grid resolution must be at least 2 per axis, got {resolution!r}")
    axes = tuple(np.linspace(lo[i], hi[i], int(res[i])) for i in range(lo.shape[0]))
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.reshape(-1) for m in mesh], axis=1)
    provenance = {
        "kind": UNIFORM_GRID,
        "box": np.stack([lo, hi], axis=1).tolist(),
        "resolution": [int(r) for r in res],
    }
    return SampleSet(points=points, provenance=provenance, axes=axes)


def halton_unit(dim: int, count: int, seed: int) -> np.ndarray:
    """Scrambled Halton points in [0, 1)^dim."""
    engine = qmc.Halton(d=dim, scramble=True, seed=seed)
    return engine.random(count)


def low_discrepancy(box: Any, count: int, seed: int) -> SampleSet:
    """
    Scrambled Halton points scaled into a box.

    Args:
        box: Box descriptor
        count: Number of points (>= 1)
        seed: Scrambling seed

    Returns:
        SampleSet with (box, count, seed) provenance
    """
    lo, hi = normalize_box(box)
    if count < 1:
        raise SamplingError(f"Sample count must be at least 1, got {count}")
    unit = halton_unit(lo.shape[0], count, seed)
    points = lo + unit * (hi - lo)
    provenance = {
        "kind": LOW_DISCREPANCY,
        "box": np.stack([lo, hi], axis=1).tolist(),
        "count": int(count),
        "seed": int(seed),
    }
    return SampleSet(points=points, provenance=provenance)


def user_supplied(points: Any, dim: Optional[int] = None) -> SampleSet:
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1) if dim in (None, 1) else arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise SamplingError("User-supplied sample set is empty or malformed")
    if dim is not None and arr.shape[1] != dim:
        raise SamplingError(f"User-supplied points have dimension {arr.shape[1]}, expected {dim}")
    return SampleSet(points=arr, provenance={"kind": USER_SUPPLIED, "count": int(arr.shape[0])})


def make_samples(spec: Dict[str, Any]) -> SampleSet:
    """
    Build a SampleSet from a provenance descriptor.

    Args:
        spec: {"kind": "uniform-grid", "box": ..., "resolution": ...},
              {"kind": "low-discrepancy", "box": ..., "count": ..., "seed": ...}
              or {"kind": "user-supplied", "points": [...]}

    Returns:
        The deterministic SampleSet the descriptor names
    """
    kind = spec.get("kind")
    if kind == UNIFORM_GRID:
        return uniform_grid(spec["box"], spec.get("resolution", 2))
    if kind == LOW_DISCREPANCY:
        return low_discrepancy(spec["box"], int(spec.get("count", 1)), int(spec.get("seed", 0)))
    if kind == USER_SUPPLIED:
        return user_supplied(spec.get("points", []), spec.get("dim"))
    raise SamplingError(f"Unknown sample provenance kind: {kind!r}")


def unit_directions(dim: int, count: int, seed: int) -> np.ndarray:
    """
    Quasi-uniform unit vectors.

    Gaussian transforms of Halton points, normalized. In one dimension the
    two directions alternate.
    """
    if count < 1:
        raise SamplingError(f"Direction count must be at least 1, got {count}")
    if dim == 1:
        return np.where(np.arange(count) % 2 == 0, 1.0, -1.0).reshape(-1, 1)
    unit = np.clip(halton_unit(dim, count, seed), 1e-12, 1.0 - 1e-12)
    z = norm.ppf(unit)
    lengths = np.linalg.norm(z, axis=1, keepdims=True)
    lengths[lengths == 0.0] = 1.0
    return z / lengths


def unit_ball_points(dim: int, count: int, seed: int) -> np.ndarray:
    """
    Halton points in the closed unit ball by rejection from [-1, 1]^dim.

    The sequence continues on the same engine until `count` points are kept,
    so the result is a prefix-stable function of (dim, count, seed).
    """
    if count < 1:
        raise SamplingError(f"Ball sample count must be at least 1, got {count}")
    engine = qmc.Halton(d=dim, scramble=True, seed=seed)
    ratio = math.gamma(dim / 2.0 + 1.0) * 2.0 ** dim / math.pi ** (dim / 2.0)
    kept: List[np.ndarray] = []
    total = 0
    while total < count:
        batch = 2.0 * engine.random(int(math.ceil((count - total) * ratio * 1.25)) + 16) - 1.0
        inside = batch[np.linalg.norm(batch, axis=1) <= 1.0]
        kept.append(inside)
        total += inside.shape[0]
    return np.vstack(kept)[:count]


def geometric_t_schedule(k_max: int = 20, k_min: int = 1) -> np.ndarray:
    """t_k = 1 - 2^-k for k = k_min..k_max."""
    if k_max < k_min:
        raise SamplingError(f"Empty t-schedule: k_min={k_min}, k_max={k_max}")
    ks = np.arange(k_min, k_max + 1, dtype=float)
    return 1.0 - np.power(2.0, -ks)


def radius_schedule(r0: float = 1.0, levels: int = 16) -> np.ndarray:
    """r_k = r0 * 2^-k for k = 0..levels-1, strictly decreasing to 0."""
    if r0 <= 0 or levels < 1:
        raise SamplingError(f"Radius schedule needs r0 > 0 and levels >= 1, got r0={r0}, levels={levels}")
    return r0 * np.power(2.0, -np.arange(levels, dtype=float))


def validate_t_schedule(t_schedule: Sequence[float]) -> np.ndarray:
    ts = np.asarray(t_schedule, dtype=float).reshape(-1)
    if ts.size == 0:
        raise SamplingError("t-schedule is empty")
    if np.any(ts < 0.0) or np.any(ts > 1.0):
        raise SamplingError(f"t-schedule values must lie in [0, 1], got {ts.tolist()}")
    return ts
