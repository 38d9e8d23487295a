"""
Gradient-constrained integral functionals on finite-difference meshes.

Fields live on a uniform mesh of ]0,1[ or ]0,1[^2. The gradient of a field on
a cell is the midpoint gradient of its bilinear interpolant (the forward
difference in 1-D); the constraint "∇u ∈ S a.e." becomes membership of every
cell gradient in S.
"""

import csv
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from radialrep.analysis.reports import CLOSURE_SURROGATE_BANNER, TheoremReport, one_sided_gap
from radialrep.core.errors import DimensionMismatchError, DomainError, HypothesisNotMetError, SamplingError
from radialrep.core.extreal import format_value
from radialrep.core.sampling import geometric_t_schedule, unit_ball_points, unit_directions, validate_t_schedule

logger = logging.getLogger(__name__)

CLOSURE_TOL = 1e-9
GROWTH_SLACK = 1e-12
RUUSC_SLACK = 1e-9
RANK_ONE_MARGIN = 1e-9
GEOMETRIC_RATIO = 0.75
ENERGY_NOISE = 1e-12


# -- matrices -------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix2x2:
    a: float
    b: float
    c: float
    d: float

    @classmethod
    def from_array(cls, X: Any) -> "Matrix2x2":
        X = np.asarray(X, dtype=float).reshape(2, 2)
        return cls(float(X[0, 0]), float(X[0, 1]), float(X[1, 0]), float(X[1, 1]))

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> float:
        return self.a + self.d

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])


def as_matrices(X: Any, shape: Tuple[int, int]) -> np.ndarray:
    """Stack of matrices with shape (N,) + shape."""
    if isinstance(X, Matrix2x2):
        X = X.as_array()
    X = np.asarray(X, dtype=float)
    if X.shape == shape:
        X = X[None]
    if X.ndim != 3 or X.shape[1:] != shape:
        raise DimensionMismatchError(f"Expected matrices of shape {shape}, got array of shape {X.shape}")
    return X


def det2(X: np.ndarray) -> np.ndarray:
    return X[:, 0, 0] * X[:, 1, 1] - X[:, 0, 1] * X[:, 1, 0]


def trace2(X: np.ndarray) -> np.ndarray:
    return X[:, 0, 0] + X[:, 1, 1]


def frobenius(X: np.ndarray) -> np.ndarray:
    return np.linalg.norm(X.reshape(X.shape[0], -1), axis=1)


# -- constraint sets -----------------------------------------------------------------

class ConstraintSet:
    """A set S of m x d matrices with membership and closure membership."""

    declared_convex = False

    def __init__(self, label: str, shape: Tuple[int, int]):
        self.label = label
        self.shape = tuple(shape)
        self.ref: Optional[Dict[str, Any]] = None

    def _contains(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _closure(self, X: np.ndarray, tol: float) -> np.ndarray:
        raise NotImplementedError

    def contains_mask(self, X: Any) -> np.ndarray:
        return self._contains(as_matrices(X, self.shape))

    def closure_mask(self, X: Any, tol: float = CLOSURE_TOL) -> np.ndarray:
        X = as_matrices(X, self.shape)
        return self._closure(X, tol) | self._contains(X)

    def member_samples(self, count: int, seed: int, scale: float = 1.0) -> np.ndarray:
        """Rejection samples of S from Gaussian matrices."""
        rng = np.random.default_rng(seed)
        kept: List[np.ndarray] = []
        total = 0
        for _ in range(200):
            batch = scale * rng.standard_normal((max(2 * count, 64),) + self.shape)
            inside = batch[self._contains(batch)]
            kept.append(inside)
            total += inside.shape[0]
            if total >= count:
                return np.concatenate(kept)[:count]
        raise SamplingError(f"Rejection sampling of {self.label} starved ({total}/{count}); lower the scale")

    def closure_samples(self, count: int, seed: int) -> np.ndarray:
        """Points of the closure of S, boundary points included."""
        raise NotImplementedError

    def describe(self) -> Dict[str, Any]:
        return self.ref or {"name": self.label}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label})"


class SEpsilon(ConstraintSet):
    """S_ε = {ξ in M^{2x2} : ε + det ξ > tr(ξ)^2}; nonconvex, unbounded, rank-one convex."""

    def __init__(self, eps: float):
        if not eps > 0:
            raise DomainError(f"S_eps needs eps > 0, got {eps}")
        super().__init__(f"S_eps(eps={eps!r})", (2, 2))
        self.eps = float(eps)

    def margin(self, X: np.ndarray) -> np.ndarray:
        """ε + det ξ - tr(ξ)^2, positive exactly on S_ε."""
        return self.eps + det2(X) - trace2(X) ** 2

    def _contains(self, X: np.ndarray) -> np.ndarray:
        return self.margin(X) > 0.0

    def _closure(self, X: np.ndarray, tol: float) -> np.ndarray:
        return self.margin(X) >= -tol

    def closure_samples(self, count: int, seed: int) -> np.ndarray:
        """
        Boundary matrices (ε + det = tr^2) followed by members.

        For given a, b, c the boundary entry d solves
        d^2 + a d + (a^2 + bc - ε) = 0.
        """
        rng = np.random.default_rng(seed)
        half = count // 2
        found: List[np.ndarray] = []
        total = 0
        s = math.sqrt(self.eps)
        while total < half:
            a, b, c = (s * rng.standard_normal(max(2 * half, 64)) for _ in range(3))
            disc = a * a - 4.0 * (a * a + b * c - self.eps)
            ok = disc >= 0.0
            sign = np.where(rng.random(ok.sum()) < 0.5, -1.0, 1.0)
            d = (-a[ok] + sign * np.sqrt(disc[ok])) / 2.0
            found.append(np.stack([a[ok], b[ok], c[ok], d], axis=1).reshape(-1, 2, 2))
            total += d.shape[0]
        boundary = np.concatenate(found)[:half]
        return np.concatenate([boundary, self.member_samples(count - half, seed + 1, scale=s)])


class MatrixBall(ConstraintSet):
    """Frobenius ball of matrices; convex, contains 0 in its interior."""

    declared_convex = True

    def __init__(self, radius: float, shape: Tuple[int, int] = (2, 2), open: bool = False):
        if radius <= 0:
            raise DomainError(f"Matrix ball radius must be positive, got {radius}")
        super().__init__(f"{'open ' if open else ''}ball(r={radius!r}, {shape[0]}x{shape[1]})", shape)
        self.radius = float(radius)
        self.open = open

    def _contains(self, X: np.ndarray) -> np.ndarray:
        n = frobenius(X)
        return n < self.radius if self.open else n <= self.radius

    def _closure(self, X: np.ndarray, tol: float) -> np.ndarray:
        return frobenius(X) <= self.radius + tol

    def closure_samples(self, count: int, seed: int) -> np.ndarray:
        k = self.shape[0] * self.shape[1]
        half = count // 2
        sphere = self.radius * unit_directions(k, max(half, 1), seed)[:half]
        inner = self.radius * unit_ball_points(k, count - half, seed + 1)
        return np.vstack([sphere, inner]).reshape((-1,) + self.shape)


def s_epsilon_contains(xi: Any, eps: float) -> bool:
    """ε + det(ξ) > tr(ξ)^2 for a single 2x2 matrix."""
    if not eps > 0:
        raise DomainError(f"S_eps needs eps > 0, got {eps}")
    m = xi if isinstance(xi, Matrix2x2) else Matrix2x2.from_array(xi)
    return eps + m.det > m.trace ** 2


# -- property checks ----------------------------------------------------------------

@dataclass
class PropertyCheck:
    name: str
    passed: bool
    tested: int
    violations: int = 0
    witness: Optional[Dict[str, Any]] = None
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "tested": self.tested,
            "violations": self.violations,
            "witness": self.witness,
            "detail": self.detail,
        }


@dataclass
class ConstraintSetReport:
    """Named property checks on one constraint set."""

    label: str
    checks: Dict[str, PropertyCheck] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def add(self, check: PropertyCheck) -> None:
        self.checks[check.name] = check
        level = logging.INFO if check.passed else logging.WARNING
        logger.log(level, f"{self.label} {check.name}: {'pass' if check.passed else 'fail'} ({check.detail})")

    def to_report(self, statement_id: str) -> TheoremReport:
        """One row per property: lhs = violations, rhs = 0."""
        rows = [
            {"point": [], "lhs": float(c.violations), "rhs": 0.0, "gap": 0.0 if c.passed else max(float(c.violations), 1.0),
             "property": name, "tested": c.tested}
            for name, c in self.checks.items()
        ]
        return TheoremReport(
            statement_id=statement_id,
            rows=rows,
            tolerance=0.0,
            metadata={"constraint_set": self.label, "checks": {k: c.to_dict() for k, c in self.checks.items()}},
        )


def _radial_closure_check(S: ConstraintSet, closure: np.ndarray, t_schedule: np.ndarray) -> PropertyCheck:
    """t ξ ∈ S for every sampled ξ in the closure of S and every scheduled t < 1."""
    scaled = (t_schedule[:, None, None, None] * closure[None]).reshape((-1,) + S.shape)
    inside = S.contains_mask(scaled)
    bad = np.flatnonzero(~inside)
    witness = None
    if bad.size:
        i, j = divmod(int(bad[0]), closure.shape[0])
        witness = {"t": float(t_schedule[i]), "xi": closure[j].tolist()}
    return PropertyCheck(
        name="radial_closure",
        passed=bad.size == 0,
        tested=int(scaled.shape[0]),
        violations=int(bad.size),
        witness=witness,
        detail=f"{closure.shape[0]} closure matrices x {t_schedule.shape[0]} values of t",
    )


def check_s_epsilon_properties(
    eps: float,
    closure_count: int = 10_000,
    t_schedule: Optional[Sequence[float]] = None,
    rank_one_count: int = 10_000,
    seed: int = 0,
) -> ConstraintSetReport:
    """
    Check the five structural properties of S_ε.

    Args:
        eps: Positive parameter
        closure_count: Closure matrices for the radial-closure property
        t_schedule: Values of t in [0, 1[ (defaults to 1 - 2^-k, k = 1..20)
        rank_one_count: Rank-one segments between members
        seed: Sampling seed

    Returns:
        ConstraintSetReport with checks contains_zero, radial_closure,
        not_convex, unbounded and rank_one_convex
    """
    S = SEpsilon(eps)
    ts = validate_t_schedule(geometric_t_schedule(20) if t_schedule is None else t_schedule)
    if np.any(ts >= 1.0):
        raise DomainError("Radial closure is checked for t < 1 only")
    report = ConstraintSetReport(S.label)

    zero = np.zeros((1, 2, 2))
    report.add(PropertyCheck("contains_zero", bool(S.contains_mask(zero)[0]), 1, detail="exact"))

    report.add(_radial_closure_check(S, S.closure_samples(closure_count, seed), ts))

    r = math.sqrt(eps)
    xi = np.array([[math.sqrt(1.5 * eps), -r], [r, 0.0]])
    zeta = np.array([[0.0, r], [-r, math.sqrt(1.5 * eps)]])
    mid = 0.5 * (xi + zeta)
    members = S.contains_mask(np.stack([xi, zeta, mid]))
    report.add(PropertyCheck(
        "not_convex",
        bool(members[0] and members[1] and not members[2]),
        3,
        witness={"xi": xi.tolist(), "zeta": zeta.tolist(), "midpoint": mid.tolist()},
        detail="explicit pair with midpoint outside",
    ))

    s = np.logspace(0, 12, 25)
    ray = np.zeros((s.shape[0], 2, 2))
    ray[:, 0, 1] = s
    ray[:, 1, 0] = -s
    on_ray = S.contains_mask(ray)
    report.add(PropertyCheck(
        "unbounded",
        bool(on_ray.all()),
        int(s.shape[0]),
        violations=int((~on_ray).sum()),
        detail="ray [[0, s], [-s, 0]] for s up to 1e12",
    ))

    report.add(_rank_one_check(S, rank_one_count, seed + 2))
    return report


def _rank_one_check(S: SEpsilon, count: int, seed: int, steps: int = 11) -> PropertyCheck:
    """Segments ξ + λ a⊗b, λ in [0, 1], whose endpoints are members with margin."""
    rng = np.random.default_rng(seed)
    s = math.sqrt(S.eps)
    starts: List[np.ndarray] = []
    dirs: List[np.ndarray] = []
    total = 0
    for _ in range(200):
        xi = S.member_samples(max(count, 64), int(rng.integers(0, 2**31)), scale=s)
        ab = np.einsum("ni,nj->nij", s * rng.standard_normal((xi.shape[0], 2)), rng.standard_normal((xi.shape[0], 2)))
        ok = (S.margin(xi) > RANK_ONE_MARGIN) & (S.margin(xi + ab) > RANK_ONE_MARGIN)
        starts.append(xi[ok])
        dirs.append(ab[ok])
        total += int(ok.sum())
        if total >= count:
            break
    else:
        raise SamplingError(f"Could not find {count} rank-one segments in {S.label}")
    xi = np.concatenate(starts)[:count]
    ab = np.concatenate(dirs)[:count]
    lam = np.linspace(0.0, 1.0, steps)
    seg = xi[:, None] + lam[None, :, None, None] * ab[:, None]
    inside = S.contains_mask(seg.reshape(-1, 2, 2)).reshape(count, steps)
    bad = np.argwhere(~inside)
    witness = None
    if bad.size:
        i, j = bad[0]
        witness = {"xi": xi[i].tolist(), "direction": ab[i].tolist(), "lambda": float(lam[j])}
    return PropertyCheck(
        name="rank_one_convex",
        passed=bad.size == 0,
        tested=int(count * steps),
        violations=int(bad.shape[0]),
        witness=witness,
        detail=f"{count} segments x {steps} points",
    )


def check_convex_constraint_h3_h4(
    S: ConstraintSet,
    count: int = 2000,
    t_schedule: Optional[Sequence[float]] = None,
    seed: int = 0,
    probe_radius: float = 1e-6,
) -> ConstraintSetReport:
    """0 in the interior of a convex S and t ξ ∈ S for ξ in the closure of S, t < 1."""
    if not S.declared_convex:
        raise HypothesisNotMetError("convex_constraint_h3_h4", {"convex": f"{S.label} is not declared convex"})
    ts = validate_t_schedule(geometric_t_schedule(20) if t_schedule is None else t_schedule)
    report = ConstraintSetReport(S.label)
    k = S.shape[0] * S.shape[1]
    probes = np.vstack([np.zeros((1, k)), probe_radius * unit_directions(k, 64, seed)]).reshape((-1,) + S.shape)
    inside = S.contains_mask(probes)
    report.add(PropertyCheck(
        "zero_interior",
        bool(inside.all()),
        int(probes.shape[0]),
        violations=int((~inside).sum()),
        detail=f"0 and a sphere of radius {probe_radius:g}",
    ))
    report.add(_radial_closure_check(S, S.closure_samples(count, seed), ts))
    return report


# -- integrands ---------------------------------------------------------------------

@dataclass
class Integrand:
    """L with declared growth c|ξ|^p <= L(ξ) <= C(1 + |ξ|^p) and Lipschitz constant C′."""

    name: str
    L: Callable[[np.ndarray], np.ndarray]
    p: float
    c: float = 1.0
    C: float = 1.0
    C_prime: float = 1.0
    convex: bool = False
    shape: Tuple[int, int] = (2, 2)
    ref: Optional[Dict[str, Any]] = None

    def __post_init__(self):
        if not self.p > 1:
            raise DomainError(f"Growth exponent p must exceed 1, got {self.p}")
        self.shape = tuple(int(s) for s in self.shape)

    def __call__(self, Xi: Any) -> np.ndarray:
        return np.asarray(self.L(as_matrices(Xi, self.shape)), dtype=float)

    def ruusc_bound(self, t: Any) -> np.ndarray:
        """4 C′ max{1, 1/c} (1 - t)."""
        return 4.0 * self.C_prime * max(1.0, 1.0 / self.c) * (1.0 - np.asarray(t, dtype=float))

    def describe(self) -> Dict[str, Any]:
        return self.ref or {"name": self.name}


@dataclass
class GrowthCheck:
    c_est: float
    C_est: float
    C_prime_est: float
    passed: bool
    failures: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "c_est": self.c_est,
            "C_est": self.C_est,
            "C_prime_est": self.C_prime_est,
            "passed": self.passed,
            "failures": self.failures,
        }


def growth_samples(shape: Tuple[int, int], radius: float, count: int, seed: int) -> np.ndarray:
    """Matrices filling the ball of the given radius, its sphere included."""
    k = shape[0] * shape[1]
    half = count // 2
    ball = radius * unit_ball_points(k, count - half, seed)
    sphere = radius * unit_directions(k, max(half, 1), seed + 1)[:half]
    return np.vstack([ball, sphere]).reshape((-1,) + tuple(shape))


def check_growth_and_lipschitz(
    L: Integrand,
    samples: Optional[np.ndarray] = None,
    radius: float = 10.0,
    count: int = 2000,
    seed: int = 0,
) -> GrowthCheck:
    """
    Compare the declared c, C and C′ with sampled ratios.

    The Lipschitz estimate is |L(ξ) - L(ζ)| <= C′ |ξ - ζ| (1 + |ξ|^{p-1} + |ζ|^{p-1}),
    sampled on shuffled pairs and on nearby pairs.
    """
    X = growth_samples(L.shape, radius, count, seed) if samples is None else as_matrices(samples, L.shape)
    values = L(X)
    norms = frobenius(X)
    failures: Dict[str, Any] = {}

    def slack(v: np.ndarray) -> np.ndarray:
        return GROWTH_SLACK * (1.0 + np.abs(v))

    negative = np.flatnonzero(values < -slack(values))
    if negative.size:
        failures["nonnegative"] = {"xi": X[negative[0]].tolist(), "L": float(values[negative[0]])}

    lower = L.c * norms ** L.p
    bad = np.flatnonzero(lower > values + slack(values))
    if bad.size:
        failures["lower_growth"] = {"xi": X[bad[0]].tolist(), "L": float(values[bad[0]]), "bound": float(lower[bad[0]])}
    upper = L.C * (1.0 + norms ** L.p)
    bad = np.flatnonzero(values > upper + slack(values))
    if bad.size:
        failures["upper_growth"] = {"xi": X[bad[0]].tolist(), "L": float(values[bad[0]]), "bound": float(upper[bad[0]])}

    rng = np.random.default_rng(seed)
    partner = np.concatenate([
        X[rng.permutation(X.shape[0])],
        X + 1e-3 * rng.standard_normal(X.shape),
    ])
    base = np.concatenate([X, X])
    diff = np.abs(L(base) - L(partner))
    scale = frobenius(base - partner) * (1.0 + frobenius(base) ** (L.p - 1) + frobenius(partner) ** (L.p - 1))
    with np.errstate(divide="ignore", invalid="ignore"):
        lip = np.where(scale > 0, diff / scale, 0.0)
    bad = np.flatnonzero(diff > L.C_prime * scale + slack(diff))
    if bad.size:
        failures["lipschitz"] = {"xi": base[bad[0]].tolist(), "zeta": partner[bad[0]].tolist(), "ratio": float(lip[bad[0]])}

    nonzero = norms > 0
    with np.errstate(divide="ignore"):
        c_est = float(np.min(values[nonzero] / norms[nonzero] ** L.p)) if nonzero.any() else math.inf
    check = GrowthCheck(
        c_est=c_est,
        C_est=float(np.max(values / (1.0 + norms ** L.p))),
        C_prime_est=float(np.max(lip)),
        passed=not failures,
        failures=failures,
    )
    logger.info(
        f"Growth check for {L.name}: c~{check.c_est:.4g}, C~{check.C_est:.4g}, C'~{check.C_prime_est:.4g}, "
        f"{'pass' if check.passed else 'fail: ' + ', '.join(failures)}"
    )
    return check


# -- mesh fields ----------------------------------------------------------------------

class MeshField:
    """
    Nodal values of u: Ω -> R^m on the uniform mesh with n cells per side.

    `values` has shape (n + 1,) * d + (m,).
    """

    def __init__(self, values: Any, d: int):
        if d not in (1, 2):
            raise DimensionMismatchError(f"Mesh fields are 1-D or 2-D, got d={d}")
        values = np.asarray(values, dtype=float)
        if values.ndim == d:
            values = values[..., None]
        if values.ndim != d + 1 or len(set(values.shape[:d])) != 1 or values.shape[0] < 2:
            raise DimensionMismatchError(f"Nodal array of shape {values.shape} does not fit a {d}-D square mesh")
        self.values = values
        self.d = d

    @property
    def n(self) -> int:
        return self.values.shape[0] - 1

    @property
    def m(self) -> int:
        return self.values.shape[-1]

    @property
    def h(self) -> float:
        return 1.0 / self.n

    @property
    def cell_measure(self) -> float:
        return self.h ** self.d

    @classmethod
    def zeros(cls, n: int, m: int, d: int) -> "MeshField":
        return cls(np.zeros((n + 1,) * d + (m,)), d)

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], n: int, d: int) -> "MeshField":
        """Nodal values fn(x) for x of shape (N, d); fn returns (N,) or (N, m)."""
        x = node_coordinates(n, d)
        values = np.asarray(fn(x), dtype=float).reshape((n + 1,) * d + (-1,))
        return cls(values, d)

    def node_coordinates(self) -> np.ndarray:
        return node_coordinates(self.n, self.d)

    def scaled(self, t: float) -> "MeshField":
        return MeshField(t * self.values, self.d)

    def cell_gradients(self) -> np.ndarray:
        """(cells, m, d) array of cell gradients."""
        u, h = self.values, self.h
        if self.d == 1:
            return ((u[1:] - u[:-1]) / h)[..., None]
        ux = 0.5 * ((u[1:, :-1] - u[:-1, :-1]) + (u[1:, 1:] - u[:-1, 1:])) / h
        uy = 0.5 * ((u[:-1, 1:] - u[:-1, :-1]) + (u[1:, 1:] - u[1:, :-1])) / h
        return np.stack([ux, uy], axis=-1).reshape(-1, self.m, 2)

    def boundary_mask(self) -> np.ndarray:
        idx = np.arange(self.n + 1)
        edge = (idx == 0) | (idx == self.n)
        if self.d == 1:
            return edge
        return edge[:, None] | edge[None, :]

    def admissible(self, S: ConstraintSet, closure: bool = False) -> bool:
        G = self.cell_gradients()
        return bool(np.all(S.closure_mask(G) if closure else S.contains_mask(G)))

    def to_csv(self, path: str) -> None:
        header = [f"x{i}" for i in range(self.d)] + [f"u{j}" for j in range(self.m)]
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(header)
            for x, u in zip(self.node_coordinates(), self.values.reshape(-1, self.m)):
                writer.writerow([format_value(v) for v in x] + [format_value(v) for v in u])
        logger.info(f"Mesh field ({self.n} cells per side, m={self.m}) written to {path}")

    def __repr__(self) -> str:
        return f"MeshField(d={self.d}, n={self.n}, m={self.m})"


def node_coordinates(n: int, d: int) -> np.ndarray:
    x = np.linspace(0.0, 1.0, n + 1)
    if d == 1:
        return x[:, None]
    X, Y = np.meshgrid(x, x, indexing="ij")
    return np.stack([X.reshape(-1), Y.reshape(-1)], axis=1)


def energy_J(u: MeshField, L: Integrand) -> float:
    """Midpoint quadrature of L(∇u) over Ω."""
    G = u.cell_gradients()
    if G.shape[1:] != L.shape:
        raise DimensionMismatchError(f"Field gradients are {G.shape[1:]}, integrand expects {L.shape}")
    return float(np.sum(L(G)) * u.cell_measure)


def _bubble_modes(x: np.ndarray, modes: int) -> np.ndarray:
    """sin(kπx) [sin(lπy)] / (kl π) for k, l = 1..modes; zero on ∂Ω."""
    ks = np.arange(1, modes + 1)
    cols = []
    if x.shape[1] == 1:
        for k in ks:
            cols.append(np.sin(k * np.pi * x[:, 0]) / (k * np.pi))
    else:
        for k in ks:
            for l in ks:
                cols.append(np.sin(k * np.pi * x[:, 0]) * np.sin(l * np.pi * x[:, 1]) / (k * l * np.pi))
    return np.stack(cols, axis=1)


def sample_constrained_fields(
    S: ConstraintSet,
    n: int,
    count: int,
    seed: int = 0,
    amplitude: float = 0.1,
    modes: int = 2,
    max_attempts: int = 50,
) -> List[MeshField]:
    """
    Rejection-sample fields with every cell gradient in S; the zero field comes first.

    A candidate is an affine field A x plus boundary-vanishing sine modes, with
    A and the mode coefficients Gaussian of size `amplitude`.

    Raises:
        SamplingError: if fewer than `count` fields survive `count * max_attempts` draws
    """
    m, d = S.shape
    if d not in (1, 2):
        raise DimensionMismatchError(f"Constraint set {S.label} has {d} columns; meshes are 1-D or 2-D")
    zero = MeshField.zeros(n, m, d)
    if not zero.admissible(S):
        raise HypothesisNotMetError("sample_constrained_fields", {"zero_in_S": f"0 is not in {S.label}"})
    rng = np.random.default_rng(seed)
    x = node_coordinates(n, d)
    basis = _bubble_modes(x, modes)
    fields = [zero]
    attempts = 0
    while len(fields) < count and attempts < count * max_attempts:
        attempts += 1
        A = amplitude * rng.standard_normal((m, d))
        coeffs = amplitude * rng.standard_normal((basis.shape[1], m))
        u = MeshField((x @ A.T + basis @ coeffs).reshape((n + 1,) * d + (m,)), d)
        if u.admissible(S):
            fields.append(u)
    if len(fields) < count:
        raise SamplingError(
            f"Only {len(fields)} of {count} fields in {S.label} after {attempts} draws; use a smaller amplitude"
        )
    logger.debug(f"Sampled {count} fields in {S.label} on a {n}-cell mesh ({attempts} draws)")
    return fields


def sample_cell_perturbations(
    n: int,
    count: int,
    amplitude: float = 0.5,
    seed: int = 0,
    m: int = 2,
    d: int = 2,
) -> List[MeshField]:
    """Random nodal fields vanishing on the unit-cell boundary."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        u = MeshField(amplitude * rng.standard_normal((n + 1,) * d + (m,)), d)
        u.values[u.boundary_mask()] = 0.0
        out.append(u)
    return out


@dataclass
class QuasiconvexityReport:
    tested: int
    violations: int
    witness: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    @property
    def label(self) -> str:
        return "no violation found" if self.passed else "violation found"


def check_quasiconvexity_necessary(
    L: Integrand,
    xi_samples: Optional[np.ndarray] = None,
    perturbations: Optional[List[MeshField]] = None,
    count: int = 1000,
    n: int = 8,
    seed: int = 0,
) -> QuasiconvexityReport:
    """
    Check L(ξ) <= average over cells of L(ξ + ∇φ) for sampled pairs (ξ, φ).

    A necessary condition only: passing means no violation was found.
    """
    m, d = L.shape
    X = growth_samples(L.shape, 2.0, count, seed) if xi_samples is None else as_matrices(xi_samples, L.shape)
    phis = perturbations or sample_cell_perturbations(n, min(count, 100), seed=seed + 1, m=m, d=d)
    for phi in phis:
        if np.any(phi.values[phi.boundary_mask()] != 0.0):
            raise DomainError("Perturbation fields must vanish on the unit-cell boundary")
    grads = [phi.cell_gradients() for phi in phis]
    base = L(X)
    violations = 0
    witness = None
    for i, xi in enumerate(X):
        G = grads[i % len(grads)]
        avg = float(np.mean(L(xi[None] + G)))
        if avg < base[i] - GROWTH_SLACK * (1.0 + abs(base[i])):
            violations += 1
            if witness is None:
                witness = {"xi": xi.tolist(), "perturbation": i % len(grads), "L": float(base[i]), "average": avg}
    report = QuasiconvexityReport(tested=int(X.shape[0]), violations=violations, witness=witness)
    logger.info(f"Quasiconvexity necessary check for {L.name}: {report.label} ({report.tested} pairs)")
    return report


# -- relaxation verifiers -------------------------------------------------------------

def verify_J_ruusc(
    L: Integrand,
    S: ConstraintSet,
    n: int = 8,
    t_schedule: Sequence[float] = (0.9, 0.99, 0.999),
    fields: Optional[List[MeshField]] = None,
    count: int = 100,
    seed: int = 0,
    amplitude: float = 0.1,
    enforce_hypotheses: bool = True,
) -> TheoremReport:
    """
    Sampled modulus of J over constrained fields, with a = |Ω| and u0 = 0.

    Every ratio (J(t u) - J(u)) / (|Ω| + |J(u)|) must stay below
    4 C′ max{1, 1/c} (1 - t) + 1e-9.
    """
    failed: Dict[str, Any] = {}
    growth = check_growth_and_lipschitz(L)
    if not growth.passed:
        failed["growth_and_lipschitz"] = growth.failures
    m, d = S.shape
    if not S.contains_mask(np.zeros((1, m, d)))[0]:
        failed["zero_in_S"] = f"0 is not in {S.label}"
    if failed and enforce_hypotheses:
        raise HypothesisNotMetError("J_ruusc", failed)

    ts = validate_t_schedule(t_schedule)
    fields = fields if fields is not None else sample_constrained_fields(S, n, count, seed, amplitude)
    omega = 1.0
    energies = np.array([energy_J(u, L) for u in fields])
    rows: List[Dict[str, Any]] = []
    for t in ts:
        bound = float(L.ruusc_bound(t)) + RUUSC_SLACK
        for i, u in enumerate(fields):
            tu = u.scaled(float(t))
            ratio = (energy_J(tu, L) - energies[i]) / (omega + abs(energies[i]))
            rows.append({
                "point": [float(t), float(i)],
                "lhs": float(ratio),
                "rhs": bound,
                "gap": float(one_sided_gap(ratio, bound)),
                "scaled_admissible": tu.admissible(S),
            })
    report = TheoremReport(
        statement_id="J_ruusc",
        rows=rows,
        tolerance=0.0,
        hypotheses={"growth_and_lipschitz": growth.to_dict(), "failed": failed},
        banner=[CLOSURE_SURROGATE_BANNER],
        metadata={"a": omega, "constraint_set": S.label, "integrand": L.name, "mesh": n, "fields": len(fields)},
        enforce_hypotheses=enforce_hypotheses,
    )
    logger.info(report.summary())
    return report


@dataclass
class RadialEnergyResult:
    """
    |J(t u) - J(u)| along the schedule and the extrapolated limit.

    Passing needs the extrapolation error within `tolerance` and, over the
    second half of the schedule, each gap at most `ratio_bound` times the one
    before. Gaps at the rounding level of J are not compared.
    """

    J: float
    extrapolated: float
    t_schedule: List[float]
    gaps: List[float]
    tolerance: float
    ratio_bound: float = GEOMETRIC_RATIO

    @property
    def error(self) -> float:
        return abs(self.extrapolated - self.J)

    @property
    def ratios(self) -> List[float]:
        floor = ENERGY_NOISE * max(1.0, abs(self.J))
        return [b / a for a, b in zip(self.gaps, self.gaps[1:]) if a > floor]

    @property
    def tail_ratios(self) -> List[float]:
        floor = ENERGY_NOISE * max(1.0, abs(self.J))
        pairs = list(zip(self.gaps, self.gaps[1:]))
        return [b / a for a, b in pairs[len(pairs) // 2:] if a > floor]

    @property
    def geometric(self) -> bool:
        return all(r <= self.ratio_bound for r in self.tail_ratios)

    @property
    def passed(self) -> bool:
        return self.error <= self.tolerance and self.geometric

    def __bool__(self) -> bool:
        return self.passed


def verify_radial_equals_J(
    u: MeshField,
    L: Integrand,
    t_schedule: Optional[Sequence[float]] = None,
    tol: float = 1e-6,
    S: Optional[ConstraintSet] = None,
) -> RadialEnergyResult:
    """
    J(t u) -> J(u) as t increases to 1.

    The limit is extrapolated linearly in s = 1 - t from the last two schedule
    entries and compared with J(u). The gaps |J(t u) - J(u)| must also shrink
    geometrically along the tail of the schedule.

    Raises:
        DomainError: if S is given and a cell gradient lies outside its closure
    """
    if S is not None and not u.admissible(S, closure=True):
        raise DomainError(f"Field has cell gradients outside the closure of {S.label}")
    ts = validate_t_schedule(geometric_t_schedule(20) if t_schedule is None else t_schedule)
    if ts.shape[0] < 2:
        raise SamplingError("Radial energy extrapolation needs at least two values of t")
    J = energy_J(u, L)
    Jt = np.array([energy_J(u.scaled(float(t)), L) for t in ts])
    s1, s2 = 1.0 - ts[-2], 1.0 - ts[-1]
    extrapolated = float(Jt[-1] - s2 * (Jt[-2] - Jt[-1]) / (s1 - s2))
    return RadialEnergyResult(
        J=J,
        extrapolated=extrapolated,
        t_schedule=ts.tolist(),
        gaps=np.abs(Jt - J).tolist(),
        tolerance=tol,
    )


def radial_energy_report(
    fields: List[MeshField],
    L: Integrand,
    t_schedule: Optional[Sequence[float]] = None,
    tol: float = 1e-6,
    S: Optional[ConstraintSet] = None,
) -> TheoremReport:
    """verify_radial_equals_J for every field, one row each."""
    rows = []
    geometric = True
    for i, u in enumerate(fields):
        result = verify_radial_equals_J(u, L, t_schedule, tol, S)
        rows.append({
            "point": [float(i)],
            "lhs": result.extrapolated,
            "rhs": result.J,
            "gap": result.error,
            "last_gap": result.gaps[-1],
            "max_tail_ratio": max(result.tail_ratios, default=0.0),
        })
        geometric = geometric and result.geometric
    report = TheoremReport(
        statement_id="radial_equals_J",
        rows=rows,
        tolerance=tol,
        banner=[CLOSURE_SURROGATE_BANNER],
        metadata={"integrand": L.name, "constraint_set": S.label if S else None},
        checks={"geometric_decrease": geometric},
    )
    logger.info(report.summary())
    return report
