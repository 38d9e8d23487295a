"""
Regions, strongly star-shaped checks and indicator functions.

A Region is a subset D of R^n with a distinguished point u0 (its center).
Membership is exact; closure membership allows an absolute tolerance tau_cl.
Boundary points are produced by ray exit from u0 along quasi-uniform
directions, which reaches the whole boundary of every region that is
strongly star-shaped relative to u0.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linprog

from radialrep.core.errors import DomainError, SamplingError
from radialrep.core.oracle import FunctionOracle, FunctionProperties, as_points
from radialrep.core.sampling import SampleSet, geometric_t_schedule, halton_unit, unit_directions, validate_t_schedule

logger = logging.getLogger(__name__)

TAU_CL = 1e-9


def _scalar_or_mask(x: Any, mask: np.ndarray) -> Union[bool, np.ndarray]:
    return bool(mask[0]) if np.ndim(x) <= 1 and mask.shape[0] == 1 else mask


class Region:
    """Base class: subclasses implement the membership predicates and ray exit."""

    # True: boundary samples belong to D; False: they never do; None: mixed
    boundary_closed: Optional[bool] = None

    def __init__(self, name: str, dim: int, center: Any, declared_convex: bool = False, tau_cl: float = TAU_CL):
        self.name = name
        self.dim = dim
        self.center = np.asarray(center, dtype=float).reshape(dim)
        self.declared_convex = declared_convex
        self.tau_cl = tau_cl
        self.ref: Optional[Dict[str, Any]] = None

    def _contains(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _closure(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def exit_distance(self, directions: np.ndarray) -> np.ndarray:
        """sup{s >= 0 : center + s*d in the closure} for each unit direction d."""
        raise NotImplementedError

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def contains_mask(self, X: Any) -> np.ndarray:
        return np.asarray(self._contains(as_points(X, self.dim)), dtype=bool)

    def closure_mask(self, X: Any) -> np.ndarray:
        X = as_points(X, self.dim)
        return np.asarray(self._closure(X), dtype=bool) | self.contains_mask(X)

    def contains(self, x: Any) -> Union[bool, np.ndarray]:
        return _scalar_or_mask(x, self.contains_mask(x))

    def contains_closure(self, x: Any) -> Union[bool, np.ndarray]:
        return _scalar_or_mask(x, self.closure_mask(x))

    def ray_points(self, directions: np.ndarray) -> np.ndarray:
        s = self.exit_distance(directions)
        if np.any(~np.isfinite(s)):
            raise SamplingError(f"Region '{self.name}' is unbounded along a sampled direction")
        return self._snap(self.center + s[:, None] * directions, directions, s)

    def _snap(self, P: np.ndarray, directions: np.ndarray, s: np.ndarray) -> np.ndarray:
        """Push rounding-error boundary points to the side the region's boundary belongs to."""
        if self.boundary_closed is None:
            return P
        for _ in range(64):
            inside = self.contains_mask(P)
            wrong = ~inside if self.boundary_closed else inside
            if not wrong.any():
                break
            step = np.spacing(np.maximum(np.abs(s[wrong]), 1.0)) * 4.0
            s = s.copy()
            s[wrong] = s[wrong] - step if self.boundary_closed else s[wrong] + step
            P = P.copy()
            P[wrong] = self.center + s[wrong, None] * directions[wrong]
        return P

    def sample_boundary(self, count: int, seed: int) -> SampleSet:
        """
        Points on the topological boundary by ray exit from the center.

        Args:
            count: Number of directions
            seed: Direction seed

        Returns:
            SampleSet of boundary points
        """
        directions = unit_directions(self.dim, count, seed)
        points = self.ray_points(directions)
        return SampleSet(
            points=points,
            provenance={"kind": "boundary", "region": self.name, "count": int(count), "seed": int(seed)},
        )

    def sample_interiorish(self, count: int, seed: int) -> SampleSet:
        """
        Points of D: the center first, then Halton points of the bounding box kept by `contains`.

        Args:
            count: Number of points wanted
            seed: Halton scrambling seed

        Returns:
            SampleSet of exactly `count` points of D
        """
        if count < 1:
            raise SamplingError(f"Sample count must be at least 1, got {count}")
        lo, hi = self.bounding_box()
        kept = [self.center.reshape(1, -1)] if self.contains(self.center) else []
        have = len(kept)
        attempts = 0
        draw = max(4 * count, 64)
        while have < count:
            attempts += 1
            if attempts > 12:
                raise SamplingError(f"Region '{self.name}' starved interior sampling after {attempts - 1} rounds")
            unit = halton_unit(self.dim, draw * attempts, seed)[draw * (attempts - 1):]
            batch = lo + unit * (hi - lo)
            inside = batch[self.contains_mask(batch)]
            kept.append(inside)
            have += inside.shape[0]
        points = np.vstack(kept)[:count]
        return SampleSet(
            points=points,
            provenance={"kind": "interior", "region": self.name, "count": int(count), "seed": int(seed)},
        )

    def closure(self) -> "Region":
        return ClosureRegion(self)

    def describe(self) -> Dict[str, Any]:
        if self.ref is not None:
            return self.ref
        return {"name": self.name, "center": self.center.tolist()}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r}, center={self.center.tolist()})"


class BoxRegion(Region):
    """Axis-aligned box with each side independently open or closed."""

    def __init__(
        self,
        lo: Sequence[float],
        hi: Sequence[float],
        lower_closed: Union[bool, Sequence[bool]] = True,
        upper_closed: Union[bool, Sequence[bool]] = True,
        center: Optional[Sequence[float]] = None,
        name: str = "box",
        tau_cl: float = TAU_CL,
    ):
        self.lo = np.atleast_1d(np.asarray(lo, dtype=float))
        self.hi = np.atleast_1d(np.asarray(hi, dtype=float))
        if self.lo.shape != self.hi.shape or np.any(self.lo >= self.hi):
            raise DomainError(f"Box needs lo < hi on every axis, got lo={self.lo.tolist()}, hi={self.hi.tolist()}")
        self.lower_closed = np.broadcast_to(np.asarray(lower_closed, dtype=bool), self.lo.shape).copy()
        self.upper_closed = np.broadcast_to(np.asarray(upper_closed, dtype=bool), self.lo.shape).copy()
        if center is None:
            center = 0.5 * (self.lo + self.hi)
        super().__init__(name, self.lo.shape[0], center, declared_convex=True, tau_cl=tau_cl)

    def _contains(self, X: np.ndarray) -> np.ndarray:
        above = np.where(self.lower_closed, X >= self.lo, X > self.lo)
        below = np.where(self.upper_closed, X <= self.hi, X < self.hi)
        return np.all(above & below, axis=1)

    def _closure(self, X: np.ndarray) -> np.ndarray:
        return np.all((X >= self.lo - self.tau_cl) & (X <= self.hi + self.tau_cl), axis=1)

    def _axis_exits(self, directions: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            up = (self.hi - self.center) / directions
            down = (self.lo - self.center) / directions
        return np.where(directions > 0, up, np.where(directions < 0, down, np.inf))

    def exit_distance(self, directions: np.ndarray) -> np.ndarray:
        return np.maximum(np.min(self._axis_exits(directions), axis=1), 0.0)

    def ray_points(self, directions: np.ndarray) -> np.ndarray:
        exits = self._axis_exits(directions)
        axis = np.argmin(exits, axis=1)
        s = np.maximum(exits[np.arange(exits.shape[0]), axis], 0.0)
        P = self.center + s[:, None] * directions
        rows = np.arange(P.shape[0])
        binding = np.where(directions[rows, axis] > 0, self.hi[axis], self.lo[axis])
        P[rows, axis] = binding
        return np.clip(P, self.lo, self.hi)

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.lo.copy(), self.hi.copy()


class BallRegion(Region):
    """Euclidean ball, open or closed; u0 defaults to the ball center."""

    def __init__(
        self,
        center_point: Sequence[float],
        radius: float,
        open: bool = False,
        center: Optional[Sequence[float]] = None,
        name: str = "ball",
        tau_cl: float = TAU_CL,
    ):
        if radius <= 0:
            raise DomainError(f"Ball radius must be positive, got {radius}")
        self.ball_center = np.atleast_1d(np.asarray(center_point, dtype=float))
        self.radius = float(radius)
        self.open = bool(open)
        self.boundary_closed = not self.open
        super().__init__(
            name,
            self.ball_center.shape[0],
            self.ball_center if center is None else center,
            declared_convex=True,
            tau_cl=tau_cl,
        )

    def _dist(self, X: np.ndarray) -> np.ndarray:
        return np.linalg.norm(X - self.ball_center, axis=1)

    def _contains(self, X: np.ndarray) -> np.ndarray:
        d = self._dist(X)
        return d < self.radius if self.open else d <= self.radius

    def _closure(self, X: np.ndarray) -> np.ndarray:
        return self._dist(X) <= self.radius + self.tau_cl

    def exit_distance(self, directions: np.ndarray) -> np.ndarray:
        w = self.center - self.ball_center
        b = directions @ w
        disc = b * b - (w @ w - self.radius ** 2)
        return np.maximum(-b + np.sqrt(np.maximum(disc, 0.0)), 0.0)

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.ball_center - self.radius, self.ball_center + self.radius


class HalfspaceRegion(Region):
    """Bounded intersection {x : A x <= b}; `strict` makes every inequality strict."""

    def __init__(
        self,
        A: Sequence[Sequence[float]],
        b: Sequence[float],
        center: Sequence[float],
        strict: bool = False,
        name: str = "halfspaces",
        tau_cl: float = TAU_CL,
    ):
        self.A = np.atleast_2d(np.asarray(A, dtype=float))
        self.b = np.atleast_1d(np.asarray(b, dtype=float))
        if self.A.shape[0] != self.b.shape[0]:
            raise DomainError(f"Half-space matrix has {self.A.shape[0]} rows but {self.b.shape[0]} offsets")
        self.strict = bool(strict)
        self.boundary_closed = not self.strict
        self._row_norms = np.linalg.norm(self.A, axis=1)
        super().__init__(name, self.A.shape[1], center, declared_convex=True, tau_cl=tau_cl)
        self._bbox = self._compute_bbox()

    def _contains(self, X: np.ndarray) -> np.ndarray:
        lhs = X @ self.A.T
        return np.all(lhs < self.b if self.strict else lhs <= self.b, axis=1)

    def _closure(self, X: np.ndarray) -> np.ndarray:
        return np.all(X @ self.A.T <= self.b + self.tau_cl * self._row_norms, axis=1)

    def exit_distance(self, directions: np.ndarray) -> np.ndarray:
        slack = self.b - self.A @ self.center
        rate = directions @ self.A.T
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.where(rate > 0, slack / rate, np.inf)
        return np.maximum(np.min(s, axis=1), 0.0)

    def _compute_bbox(self) -> Tuple[np.ndarray, np.ndarray]:
        lo = np.empty(self.dim)
        hi = np.empty(self.dim)
        for i in range(self.dim):
            c = np.zeros(self.dim)
            c[i] = 1.0
            low = linprog(c, A_ub=self.A, b_ub=self.b, bounds=[(None, None)] * self.dim, method="highs")
            high = linprog(-c, A_ub=self.A, b_ub=self.b, bounds=[(None, None)] * self.dim, method="highs")
            if low.status != 0 or high.status != 0:
                raise DomainError(f"Half-space region '{self.name}' is empty or unbounded along axis {i}")
            lo[i] = low.x[i]
            hi[i] = high.x[i]
        return lo, hi

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        return self._bbox[0].copy(), self._bbox[1].copy()


class UnionRegion(Region):
    """D1 ∪ D2 for convex D1, D2 whose interiors both contain the center."""

    def __init__(self, first: Region, second: Region, center: Sequence[float], name: str = "union_of_convex"):
        if first.dim != second.dim:
            raise DomainError(f"Cannot unite regions of dimension {first.dim} and {second.dim}")
        self.first = first
        self.second = second
        super().__init__(name, first.dim, center, declared_convex=False, tau_cl=max(first.tau_cl, second.tau_cl))
        self.first_from_center = _recentered(first, self.center)
        self.second_from_center = _recentered(second, self.center)

    def _contains(self, X: np.ndarray) -> np.ndarray:
        return self.first.contains_mask(X) | self.second.contains_mask(X)

    def _closure(self, X: np.ndarray) -> np.ndarray:
        return self.first.closure_mask(X) | self.second.closure_mask(X)

    def exit_distance(self, directions: np.ndarray) -> np.ndarray:
        return np.maximum(
            self.first_from_center.exit_distance(directions),
            self.second_from_center.exit_distance(directions),
        )

    def ray_points(self, directions: np.ndarray) -> np.ndarray:
        s1 = self.first_from_center.exit_distance(directions)
        s2 = self.second_from_center.exit_distance(directions)
        P1 = self.first_from_center.ray_points(directions)
        P2 = self.second_from_center.ray_points(directions)
        return np.where((s1 >= s2)[:, None], P1, P2)

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        lo1, hi1 = self.first.bounding_box()
        lo2, hi2 = self.second.bounding_box()
        return np.minimum(lo1, lo2), np.maximum(hi1, hi2)


def _recentered(region: Region, center: np.ndarray) -> Region:
    """Shallow copy of a region with a different distinguished point."""
    clone = object.__new__(type(region))
    clone.__dict__.update(region.__dict__)
    clone.center = np.asarray(center, dtype=float).reshape(region.dim)
    return clone


class ShellRegion(Region):
    """
    Spherical shell {inner <= |x - c| <= outer}; the sphere is inner == outer.

    A sphere has empty interior, so membership uses the tau_cl band around it.
    """

    boundary_closed = None

    def __init__(
        self,
        center_point: Sequence[float],
        inner: float,
        outer: float,
        center: Optional[Sequence[float]] = None,
        name: str = "shell",
        tau_cl: float = TAU_CL,
    ):
        if inner < 0 or outer < inner or outer <= 0:
            raise DomainError(f"Shell needs 0 <= inner <= outer and outer > 0, got inner={inner}, outer={outer}")
        self.shell_center = np.atleast_1d(np.asarray(center_point, dtype=float))
        self.inner = float(inner)
        self.outer = float(outer)
        dim = self.shell_center.shape[0]
        if center is None:
            center = self.shell_center + self.outer * np.eye(dim)[0]
        super().__init__(name, dim, center, declared_convex=False, tau_cl=tau_cl)

    def _contains(self, X: np.ndarray) -> np.ndarray:
        d = np.linalg.norm(X - self.shell_center, axis=1)
        if self.inner == self.outer:
            return np.abs(d - self.outer) <= self.tau_cl
        return (d >= self.inner) & (d <= self.outer)

    def _closure(self, X: np.ndarray) -> np.ndarray:
        d = np.linalg.norm(X - self.shell_center, axis=1)
        return (d >= self.inner - self.tau_cl) & (d <= self.outer + self.tau_cl)

    def _on_spheres(self, count: int, seed: int, radii: np.ndarray) -> np.ndarray:
        directions = unit_directions(self.dim, count, seed)
        return self.shell_center + radii[:, None] * directions

    def sample_boundary(self, count: int, seed: int) -> SampleSet:
        radii = np.where(np.arange(count) % 2 == 0, self.outer, self.inner)
        return SampleSet(
            points=self._on_spheres(count, seed, radii),
            provenance={"kind": "boundary", "region": self.name, "count": int(count), "seed": int(seed)},
        )

    def sample_interiorish(self, count: int, seed: int) -> SampleSet:
        if count < 1:
            raise SamplingError(f"Sample count must be at least 1, got {count}")
        frac = halton_unit(1, count, seed + 1).reshape(-1)
        radii = self.inner + frac * (self.outer - self.inner)
        points = np.vstack([self.center.reshape(1, -1), self._on_spheres(count - 1, seed, radii[1:])]) if count > 1 \
            else self.center.reshape(1, -1)
        return SampleSet(
            points=points,
            provenance={"kind": "interior", "region": self.name, "count": int(count), "seed": int(seed)},
        )

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.shell_center - self.outer, self.shell_center + self.outer


class SingletonRegion(Region):
    """The one-point set {p}."""

    boundary_closed = None

    def __init__(self, point: Sequence[float], name: str = "singleton", tau_cl: float = TAU_CL):
        point = np.atleast_1d(np.asarray(point, dtype=float))
        super().__init__(name, point.shape[0], point, declared_convex=True, tau_cl=tau_cl)

    def _contains(self, X: np.ndarray) -> np.ndarray:
        return np.all(X == self.center, axis=1)

    def _closure(self, X: np.ndarray) -> np.ndarray:
        return np.all(np.abs(X - self.center) <= self.tau_cl, axis=1)

    def exit_distance(self, directions: np.ndarray) -> np.ndarray:
        return np.zeros(directions.shape[0])

    def sample_interiorish(self, count: int, seed: int) -> SampleSet:
        return SampleSet(points=self.center.reshape(1, -1), provenance={"kind": "interior", "region": self.name})

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.center.copy(), self.center.copy()


class DomainRegion(Region):
    """
    The effective domain of an oracle, star-shaped relative to `center`.

    The closure test pulls a point a relative distance tau_cl towards the
    center; the ray exit is found by bisection inside `bounds`.
    """

    boundary_closed = None

    def __init__(
        self,
        oracle: FunctionOracle,
        center: Sequence[float],
        bounds: Any,
        declared_convex: bool = False,
        name: Optional[str] = None,
        tau_cl: float = TAU_CL,
        bisection_steps: int = 60,
    ):
        super().__init__(name or f"dom({oracle.name})", oracle.dim, center, declared_convex=declared_convex, tau_cl=tau_cl)
        self.oracle = oracle
        arr = np.asarray(bounds, dtype=float).reshape(self.dim, 2)
        self.lo, self.hi = arr[:, 0], arr[:, 1]
        self.bisection_steps = bisection_steps
        if not oracle.dom_contains(self.center):
            raise DomainError(f"Center {self.center.tolist()} is outside dom {oracle.name}")

    def _contains(self, X: np.ndarray) -> np.ndarray:
        return self.oracle.dom_mask(X)

    def _closure(self, X: np.ndarray) -> np.ndarray:
        pulled = self.center + (1.0 - self.tau_cl) * (X - self.center)
        return self.oracle.dom_mask(pulled)

    def exit_distance(self, directions: np.ndarray) -> np.ndarray:
        box = BoxRegion(self.lo, self.hi, center=self.center)
        s_hi = box.exit_distance(directions)
        s_lo = np.zeros_like(s_hi)
        for _ in range(self.bisection_steps):
            mid = 0.5 * (s_lo + s_hi)
            ok = self.contains_mask(self.center + mid[:, None] * directions)
            s_lo = np.where(ok, mid, s_lo)
            s_hi = np.where(ok, s_hi, mid)
        return s_hi

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.lo.copy(), self.hi.copy()


class ClosureRegion(Region):
    """The closure of a region, used where a statement quantifies over D̄."""

    boundary_closed = True

    def __init__(self, inner: Region):
        self.inner = inner
        super().__init__(f"closure({inner.name})", inner.dim, inner.center, inner.declared_convex, inner.tau_cl)

    def _contains(self, X: np.ndarray) -> np.ndarray:
        return self.inner.closure_mask(X)

    def _closure(self, X: np.ndarray) -> np.ndarray:
        return self.inner.closure_mask(X)

    def exit_distance(self, directions: np.ndarray) -> np.ndarray:
        return self.inner.exit_distance(directions)

    def ray_points(self, directions: np.ndarray) -> np.ndarray:
        return self.inner.ray_points(directions)

    def sample_boundary(self, count: int, seed: int) -> SampleSet:
        return self.inner.sample_boundary(count, seed)

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.inner.bounding_box()

    def closure(self) -> "Region":
        return self


@dataclass
class StarShapeReport:
    """Outcome of a sampled strong star-shape check; a pass means no violation was found."""

    t_schedule: List[float]
    tested_points: int
    violations: List[Tuple[float, List[float]]] = field(default_factory=list)
    seed: Optional[int] = None
    center: Optional[List[float]] = None

    @property
    def verdict(self) -> str:
        return "pass" if not self.violations else "fail"

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def label(self) -> str:
        return "no violation found" if self.passed else f"{len(self.violations)} violations"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "label": self.label,
            "t_schedule": self.t_schedule,
            "tested_points": self.tested_points,
            "violations": [{"t": t, "u": u} for t, u in self.violations],
            "seed": self.seed,
            "center": self.center,
        }


def check_strong_star_shape(
    D: Region,
    t_schedule: Optional[Sequence[float]] = None,
    closure_samples: Optional[SampleSet] = None,
    max_violations: Optional[int] = None,
) -> StarShapeReport:
    """
    Test t*u + (1 - t)*u0 in D for every scheduled t and sampled u in D̄.

    Args:
        D: Region with distinguished point u0 = D.center
        t_schedule: Values in [0, 1[; defaults to 1 - 2^-k, k = 1..20
        closure_samples: Points of the closure of D
        max_violations: Stop recording after this many violations (None keeps all)

    Returns:
        StarShapeReport; verdict is pass iff no violation was found
    """
    ts = validate_t_schedule(geometric_t_schedule(20) if t_schedule is None else t_schedule)
    if closure_samples is None or len(closure_samples) == 0:
        raise SamplingError("check_strong_star_shape needs a nonempty closure sample set")
    U = closure_samples.points
    outside = ~D.closure_mask(U)
    if outside.any():
        raise DomainError(
            f"{int(outside.sum())} closure samples are not in the closure of '{D.name}', "
            f"first at {U[np.argmax(outside)].tolist()}"
        )

    violations: List[Tuple[float, List[float]]] = []
    for t in ts:
        bad = ~D.contains_mask(t * U + (1.0 - t) * D.center)
        for u in U[bad]:
            violations.append((float(t), u.tolist()))
        if max_violations is not None and len(violations) >= max_violations:
            violations = violations[:max_violations]
            break

    report = StarShapeReport(
        t_schedule=[float(t) for t in ts],
        tested_points=int(U.shape[0]),
        violations=violations,
        seed=closure_samples.seed,
        center=D.center.tolist(),
    )
    logger.debug(f"Star-shape check on '{D.name}': {report.label} over {report.tested_points} points")
    return report


def union_of_convex(
    D1: Region,
    D2: Region,
    u0: Sequence[float],
    probe_radius: float = 1e-6,
    probe_count: int = 64,
) -> UnionRegion:
    """
    Union of two convex regions whose interiors share the point u0.

    Args:
        D1: Convex region
        D2: Convex region
        u0: Center of the union; must be interior to D1 ∩ D2
        probe_radius: Radius of the sphere sampled around u0
        probe_count: Number of sphere probes

    Returns:
        UnionRegion centered at u0
    """
    u0 = np.atleast_1d(np.asarray(u0, dtype=float))
    for label, region in (("D1", D1), ("D2", D2)):
        if not region.declared_convex:
            raise DomainError(f"{label} ('{region.name}') is not declared convex")
    probes = np.vstack([u0, u0 + probe_radius * unit_directions(u0.shape[0], probe_count, seed=0)])
    interior = D1.contains_mask(probes) & D2.contains_mask(probes)
    if not interior.all():
        raise DomainError(
            f"u0 = {u0.tolist()} is not interior to the intersection of '{D1.name}' and '{D2.name}'"
        )
    return UnionRegion(D1, D2, u0)


def indicator(D: Region) -> FunctionOracle:
    """χ_D: 0 on D and +inf elsewhere."""
    return FunctionOracle(
        name=f"chi[{D.name}]",
        dim=D.dim,
        values=lambda X: np.zeros(X.shape[0]),
        domain=D.contains_mask,
        properties=FunctionProperties(convex=D.declared_convex, continuous=False, lower_bound=0.0, upper_bound=0.0),
        params={"region": D.describe()},
    )
