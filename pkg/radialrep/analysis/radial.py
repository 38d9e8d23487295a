"""
Radial extensions and numerical verifiers for the representation results.

The radial extension of f at u relative to u0 is the liminf of
f(t u + (1 - t) u0) as t increases to 1; here it is the minimum over the last
`window` entries of a geometric t-schedule. Every verifier checks its
hypotheses first and raises HypothesisNotMetError when one fails, unless it
is called with enforce_hypotheses=False, in which case the report says so.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from radialrep.analysis.envelope import DEFAULT_LSC_TOL, EnvelopeParams, check_lsc_in_D, envelope_values
from radialrep.analysis.modulus import DEFAULT_EPS_CERT, DEFAULT_TAIL, RuUscCertificate, certify_ru_usc
from radialrep.analysis.reports import (
    HYPOTHESES_NOT_ENFORCED_BANNER,
    METRIC_EQUIVALENCE_BANNER,
    TheoremReport,
    comparison_rows,
    gaps_nonincreasing,
    one_sided_gap,
)
from radialrep.analysis.starshape import Region, check_strong_star_shape
from radialrep.core.errors import DomainError, HypothesisNotMetError
from radialrep.core.extreal import gap
from radialrep.core.oracle import FunctionOracle, as_points
from radialrep.core.sampling import SampleSet, geometric_t_schedule, unit_ball_points

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 8
DEFAULT_LIMIT_TOL = 1e-6
EXTERIOR_STRETCH = 1.25
CONVERGENCE_SLACK = 0.1

SEQUENTIAL_IDS = {
    "radial_representation_seq": "radial_representation",
    "limit_exists_on_closure_seq": "limit_exists_on_closure",
    "envelope_representation_seq": "envelope_representation",
}


@dataclass
class RadialSettings:
    """Schedules and tolerances shared by the verifiers."""

    t_schedule: List[float] = field(default_factory=lambda: geometric_t_schedule(40).tolist())
    star_t_schedule: List[float] = field(default_factory=lambda: geometric_t_schedule(20).tolist())
    window: int = DEFAULT_WINDOW
    limit_tol: float = DEFAULT_LIMIT_TOL
    eps_cert: float = DEFAULT_EPS_CERT
    tail: int = DEFAULT_TAIL
    a_candidates: Optional[List[float]] = None
    lsc_tol: float = DEFAULT_LSC_TOL


@dataclass
class RadialLimitResult:
    """Radial values along [u0, u] and their tail liminf / limsup (+inf allowed)."""

    u: List[float]
    u0: List[float]
    t_schedule: List[float]
    values: List[float]
    liminf_estimate: float
    limsup_estimate: float
    oscillation: float
    limit_exists: bool
    window: int
    diverged: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "u": self.u,
            "u0": self.u0,
            "liminf": self.liminf_estimate,
            "limsup": self.limsup_estimate,
            "oscillation": self.oscillation,
            "limit_exists": self.limit_exists,
            "diverged": self.diverged,
            "window": self.window,
            "values": self.values,
        }


def _diverging(tail: np.ndarray, tol: float) -> np.ndarray:
    """Finite tails that increase with non-shrinking steps: monotone blow-up to +inf."""
    steps = np.diff(tail, axis=0)
    finite = np.all(np.isfinite(tail), axis=0)
    with np.errstate(invalid="ignore"):
        increasing = np.all(steps > 0, axis=0)
        not_shrinking = np.all(np.diff(steps, axis=0) >= 0, axis=0) if steps.shape[0] > 1 else increasing
    return finite & increasing & not_shrinking & (steps[-1] > tol)


def radial_values(
    f: FunctionOracle,
    u0: Any,
    U: np.ndarray,
    t_schedule: Optional[Sequence[float]] = None,
    tol: float = DEFAULT_LIMIT_TOL,
    window: int = DEFAULT_WINDOW,
) -> Dict[str, np.ndarray]:
    """
    Vectorized radial limits at many points.

    Returns:
        Dict of arrays: values (T, N), liminf, limsup, oscillation, exists, diverged
    """
    ts = np.asarray(geometric_t_schedule(40) if t_schedule is None else t_schedule, dtype=float)
    u0 = as_points(u0, f.dim)[0]
    U = as_points(U, f.dim)
    P = ts[:, None, None] * U[None, :, :] + (1.0 - ts)[:, None, None] * u0
    values = f.eval_batch(P.reshape(-1, f.dim)).reshape(ts.shape[0], U.shape[0])
    tail = values[-window:]
    liminf = tail.min(axis=0)
    limsup = tail.max(axis=0)
    diverged = _diverging(tail, tol)
    liminf = np.where(diverged, np.inf, liminf)
    limsup = np.where(diverged, np.inf, limsup)
    oscillation = gap(limsup, liminf)
    return {
        "values": values,
        "liminf": liminf,
        "limsup": limsup,
        "oscillation": oscillation,
        "exists": oscillation <= tol,
        "diverged": diverged,
    }


def radial_extension(
    f: FunctionOracle,
    u0: Any,
    u: Any,
    t_schedule: Optional[Sequence[float]] = None,
    tol: float = DEFAULT_LIMIT_TOL,
    window: int = DEFAULT_WINDOW,
) -> RadialLimitResult:
    """
    Estimate the radial extension of f at u relative to u0.

    Args:
        f: Oracle with u0 in its domain
        u0: Base point
        u: Query point
        t_schedule: Increasing schedule in [0, 1[ (defaults to 1 - 2^-k, k = 1..40)
        tol: Oscillation below which the limit is declared to exist
        window: Number of trailing schedule entries in the tail

    Returns:
        RadialLimitResult
    """
    if not f.dom_contains(u0):
        raise DomainError(f"u0 = {np.asarray(u0).tolist()} is outside dom {f.name}")
    ts = np.asarray(geometric_t_schedule(40) if t_schedule is None else t_schedule, dtype=float)
    out = radial_values(f, u0, as_points(u, f.dim), ts, tol, window)
    return RadialLimitResult(
        u=as_points(u, f.dim)[0].tolist(),
        u0=as_points(u0, f.dim)[0].tolist(),
        t_schedule=ts.tolist(),
        values=out["values"][:, 0].tolist(),
        liminf_estimate=float(out["liminf"][0]),
        limsup_estimate=float(out["limsup"][0]),
        oscillation=float(out["oscillation"][0]),
        limit_exists=bool(out["exists"][0]),
        window=window,
        diverged=bool(out["diverged"][0]),
    )


def radial_extension_oracle(
    f: FunctionOracle,
    u0: Any,
    t_schedule: Optional[Sequence[float]] = None,
    tol: float = DEFAULT_LIMIT_TOL,
    window: int = DEFAULT_WINDOW,
) -> FunctionOracle:
    """f̂_{u0} as an oracle; dom f̂ is where the tail liminf is finite."""
    u0 = as_points(u0, f.dim)[0]

    def liminf(X: np.ndarray) -> np.ndarray:
        return radial_values(f, u0, X, t_schedule, tol, window)["liminf"]

    return FunctionOracle(
        name=f"hat({f.name})",
        dim=f.dim,
        values=liminf,
        domain=lambda X: np.isfinite(liminf(X)),
        params={"u0": u0.tolist(), "window": window},
    )


def certify_radial_extension(
    f: FunctionOracle,
    D: Region,
    points: np.ndarray,
    settings: RadialSettings,
) -> RuUscCertificate:
    """
    Run certify_ru_usc on f̂_{u0} over D̄ ∩ dom f̂ with u0 = D.center.

    Args:
        f: Oracle whose radial limits exist on D̄
        D: Region
        points: Candidate points of D̄; those off D̄ or off dom f̂ are dropped
        settings: Schedules and certification tolerances

    Returns:
        RuUscCertificate of the radial extension on closure(D)
    """
    fhat = radial_extension_oracle(f, D.center, settings.t_schedule, settings.limit_tol, settings.window)
    keep = D.closure_mask(points) & fhat.dom_mask(points)
    samples = SampleSet(points=points[keep], provenance={"kind": "radial_extension_domain", "count": int(keep.sum())})
    return certify_ru_usc(
        fhat, D.closure(), settings.a_candidates, settings.t_schedule, samples, settings.eps_cert, settings.tail
    )


# -- hypothesis checks --------------------------------------------------------

class _Hypotheses:
    """Collects named hypothesis checks and refuses when one fails and enforcement is on."""

    def __init__(self, statement_id: str, enforce: bool):
        self.statement_id = statement_id
        self.enforce = enforce
        self.results: Dict[str, Dict[str, Any]] = {}

    def record(self, name: str, passed: bool, detail: Any) -> None:
        self.results[name] = {"passed": bool(passed), "detail": detail}
        if not passed:
            logger.info(f"{self.statement_id}: hypothesis '{name}' not met ({detail})")

    def settle(self) -> Dict[str, Dict[str, Any]]:
        failed = {k: v["detail"] for k, v in self.results.items() if not v["passed"]}
        if failed and self.enforce:
            raise HypothesisNotMetError(self.statement_id, failed)
        return self.results


def points_in(D: Region, *sets: SampleSet) -> SampleSet:
    """Union of sample sets restricted to points of D."""
    stacked = sets[0]
    for extra in sets[1:]:
        stacked = stacked.concat(extra)
    return stacked.subset(D.contains_mask(stacked.points))


def exterior_points(D: Region, boundary: SampleSet, stretch: float = EXTERIOR_STRETCH) -> np.ndarray:
    """Boundary points pushed outward along their ray from u0, kept only if off the closure."""
    P = D.center + stretch * (boundary.points - D.center)
    return P[~D.closure_mask(P)]


def _star_check(hyp: _Hypotheses, D: Region, closure: SampleSet, settings: RadialSettings) -> None:
    star = check_strong_star_shape(D, settings.star_t_schedule, closure, max_violations=10)
    hyp.record("strongly_star_shaped", star.passed, star.label)


def _certificate(
    hyp: _Hypotheses,
    name: str,
    f: FunctionOracle,
    D: Region,
    samples: SampleSet,
    settings: RadialSettings,
) -> Optional[RuUscCertificate]:
    try:
        cert = certify_ru_usc(
            f, D, settings.a_candidates, settings.t_schedule, samples, settings.eps_cert, settings.tail
        )
    except DomainError as e:
        hyp.record(name, False, str(e))
        return None
    hyp.record(name, cert.supported, {"verdict": cert.verdict, "a": cert.a_used, "limsup": cert.limsup_estimate})
    return cert


def _banner(statement_id: str, enforce: bool) -> List[str]:
    banner = []
    if statement_id in SEQUENTIAL_IDS:
        banner.append(METRIC_EQUIVALENCE_BANNER)
    if not enforce:
        banner.append(HYPOTHESES_NOT_ENFORCED_BANNER)
    return banner


# -- verifiers -----------------------------------------------------------------

def verify_radial_representation(
    f: FunctionOracle,
    D: Region,
    boundary_samples: SampleSet,
    interior_samples: SampleSet,
    envelope: Optional[EnvelopeParams] = None,
    tol: float = 1e-3,
    settings: Optional[RadialSettings] = None,
    scales: Sequence[float] = (1, 2),
    enforce_hypotheses: bool = True,
    statement_id: str = "radial_representation",
    convergence_slack: Optional[float] = None,
) -> TheoremReport:
    """
    Compare the envelope of f + χ_D with f̂_{u0} + χ_{D̄} at boundary and exterior samples.

    Args:
        f: Oracle, lower semicontinuous in D
        D: Region, strongly star-shaped relative to u0 = D.center
        boundary_samples: Points of ∂D
        interior_samples: Points of D used by the hypothesis checks
        envelope: Base envelope resolution; refined once per entry of `scales`
        tol: Gap tolerance at the finest resolution
        settings: Schedules and certification tolerances
        scales: Resolution scales, coarsest first
        enforce_hypotheses: Refuse to run when a hypothesis fails
        convergence_slack: Allowed growth of the max gap between consecutive
            scales (default: tol / 10)

    Returns:
        TheoremReport whose rows come from the finest resolution; it fails when
        the max gap grows across scales by more than the slack
    """
    settings = settings or RadialSettings()
    envelope = envelope or EnvelopeParams()
    slack = tol * CONVERGENCE_SLACK if convergence_slack is None else convergence_slack
    hyp = _Hypotheses(statement_id, enforce_hypotheses)
    lsc = check_lsc_in_D(f, D, interior_samples, settings.lsc_tol, envelope)
    hyp.record("lsc_in_D", lsc.passed, {"max_gap": lsc.max_gap})
    _star_check(hyp, D, interior_samples.concat(boundary_samples), settings)
    cert = _certificate(hyp, "ru_usc", f, D, points_in(D, interior_samples, boundary_samples), settings)
    hypotheses = hyp.settle()

    B = boundary_samples.points
    E = exterior_points(D, boundary_samples)
    points = np.vstack([B, E])
    kinds = ["boundary"] * B.shape[0] + ["exterior"] * E.shape[0]
    radial = radial_values(f, D.center, points, settings.t_schedule, settings.limit_tol, settings.window)
    rhs = np.where(D.closure_mask(points), radial["liminf"], np.inf)

    resolutions = []
    rows: List[Dict[str, Any]] = []
    for scale in scales:
        params = envelope.refined(scale)
        lhs = envelope_values(f, points, params, D)
        gaps = np.where(np.isnan(lhs), np.inf, gap(lhs, rhs))
        resolutions.append({
            "scale": scale,
            "levels": params.levels,
            "samples_per_shell": params.samples_per_shell,
            "max_gap": float(gaps.max()) if gaps.size else 0.0,
        })
        rows = comparison_rows(points, lhs, rhs, gaps, kind=kinds)
        logger.debug(f"{statement_id}: scale {scale} max gap {resolutions[-1]['max_gap']:.3e}")

    report = TheoremReport(
        statement_id=statement_id,
        rows=rows,
        tolerance=tol,
        resolutions=resolutions,
        hypotheses=hypotheses,
        banner=_banner(statement_id, enforce_hypotheses),
        metadata={
            "u0": D.center.tolist(),
            "region": D.describe(),
            "function": f.describe(),
            "certificate": cert.to_dict() if cert else None,
        },
        enforce_hypotheses=enforce_hypotheses,
        checks={"gap_nonincreasing": gaps_nonincreasing(resolutions, slack)},
    )
    logger.info(report.summary())
    return report


def verify_limit_exists_on_closure(
    f: FunctionOracle,
    D: Region,
    boundary_samples: SampleSet,
    interior_samples: SampleSet,
    tol: float = DEFAULT_LIMIT_TOL,
    settings: Optional[RadialSettings] = None,
    enforce_hypotheses: bool = True,
    statement_id: str = "limit_exists_on_closure",
) -> TheoremReport:
    """
    Check that the radial limit exists (tail oscillation <= tol) at sampled points of D̄.

    Hypotheses: D strongly star-shaped relative to u0, f ru-usc in D relative to u0.
    When every limit exists, f̂_{u0} is certified ru-usc on D̄ ∩ dom f̂ as well and
    the report fails unless that certificate is supported.
    """
    settings = settings or RadialSettings()
    hyp = _Hypotheses(statement_id, enforce_hypotheses)
    closure = interior_samples.concat(boundary_samples)
    _star_check(hyp, D, closure, settings)
    cert = _certificate(hyp, "ru_usc", f, D, points_in(D, interior_samples, boundary_samples), settings)
    hypotheses = hyp.settle()

    radial = radial_values(f, D.center, closure.points, settings.t_schedule, tol, settings.window)
    kinds = ["interior"] * len(interior_samples) + ["boundary"] * len(boundary_samples)
    rows = comparison_rows(
        closure.points,
        radial["limsup"],
        radial["liminf"],
        radial["oscillation"],
        kind=kinds,
        diverged=[bool(d) for d in radial["diverged"]],
    )
    checks: Dict[str, bool] = {}
    transfer = None
    if all(r["gap"] <= tol for r in rows):
        try:
            transfer = certify_radial_extension(f, D, closure.points, settings)
            checks["radial_extension_ru_usc"] = transfer.supported
        except DomainError as e:
            logger.warning(f"{statement_id}: radial extension could not be certified ({e})")
            checks["radial_extension_ru_usc"] = False
    report = TheoremReport(
        statement_id=statement_id,
        rows=rows,
        tolerance=tol,
        resolutions=[{"scale": 1, "window": settings.window, "max_gap": float(np.max(radial["oscillation"]))}],
        hypotheses=hypotheses,
        banner=_banner(statement_id, enforce_hypotheses),
        metadata={
            "u0": D.center.tolist(),
            "certificate": cert.to_dict() if cert else None,
            "radial_extension_certificate": transfer.to_dict() if transfer else None,
        },
        enforce_hypotheses=enforce_hypotheses,
        checks=checks,
    )
    logger.info(report.summary())
    return report


def verify_envelope_representation(
    f: FunctionOracle,
    g: FunctionOracle,
    dom: Region,
    domain_samples: SampleSet,
    boundary_samples: Optional[SampleSet] = None,
    envelope: Optional[EnvelopeParams] = None,
    tol: float = 1e-3,
    settings: Optional[RadialSettings] = None,
    enforce_hypotheses: bool = True,
    statement_id: str = "envelope_representation",
) -> TheoremReport:
    """
    Check f̄ = ĝ_{u0} + χ_{dom f̄} at sampled points, with the closure of dom f standing in for dom f̄.

    Args:
        f: Oracle
        g: Oracle agreeing with f̄ on dom f
        dom: Region describing dom f, strongly star-shaped relative to u0 = dom.center
        domain_samples: Points of dom f
        boundary_samples: Points of ∂ dom f (defaults to 32 ray-exit points)
        envelope: Envelope resolution
        tol: Gap tolerance
    """
    settings = settings or RadialSettings()
    envelope = envelope or EnvelopeParams()
    boundary_samples = boundary_samples or dom.sample_boundary(32, seed=domain_samples.seed or 0)
    hyp = _Hypotheses(statement_id, enforce_hypotheses)

    D = domain_samples.points
    off_dom = ~f.dom_mask(D)
    if off_dom.any():
        raise DomainError(f"{int(off_dom.sum())} domain samples are outside dom {f.name}")
    env_on_dom = envelope_values(f, D, envelope)
    agreement = gap(g.eval_batch(D), env_on_dom)
    hyp.record("g_equals_envelope_on_dom", bool(np.all(agreement <= settings.lsc_tol)), {"max_gap": float(agreement.max())})
    _star_check(hyp, dom, domain_samples.concat(boundary_samples), settings)
    cert = _certificate(hyp, "envelope_ru_usc", g, dom, points_in(dom, domain_samples, boundary_samples), settings)
    hypotheses = hyp.settle()

    E = exterior_points(dom, boundary_samples)
    points = np.vstack([D, boundary_samples.points, E])
    kinds = ["domain"] * D.shape[0] + ["boundary"] * len(boundary_samples) + ["exterior"] * E.shape[0]
    lhs = envelope_values(f, points, envelope)
    radial = radial_values(g, dom.center, points, settings.t_schedule, settings.limit_tol, settings.window)
    rhs = np.where(dom.closure_mask(points), radial["liminf"], np.inf)
    gaps = gap(lhs, rhs)

    report = TheoremReport(
        statement_id=statement_id,
        rows=comparison_rows(points, lhs, rhs, gaps, kind=kinds),
        tolerance=tol,
        resolutions=[{"scale": 1, "levels": envelope.levels, "max_gap": float(gaps.max()) if gaps.size else 0.0}],
        hypotheses=hypotheses,
        banner=_banner(statement_id, enforce_hypotheses),
        metadata={"u0": dom.center.tolist(), "certificate": cert.to_dict() if cert else None},
        enforce_hypotheses=enforce_hypotheses,
    )
    logger.info(report.summary())
    return report


def verify_ruusc_representation(
    f: FunctionOracle,
    dom: Region,
    domain_samples: SampleSet,
    boundary_samples: Optional[SampleSet] = None,
    envelope: Optional[EnvelopeParams] = None,
    tol: float = 1e-3,
    settings: Optional[RadialSettings] = None,
    enforce_hypotheses: bool = True,
) -> TheoremReport:
    """f̄ = f̂_{u0} when f̄ = f on dom f: the envelope representation with g = f."""
    return verify_envelope_representation(
        f, f, dom, domain_samples, boundary_samples, envelope, tol, settings,
        enforce_hypotheses, statement_id="ruusc_representation",
    )


def verify_convex_radial_representation(
    f: FunctionOracle,
    dom: Region,
    domain_samples: SampleSet,
    base_points: Optional[SampleSet] = None,
    boundary_samples: Optional[SampleSet] = None,
    envelope: Optional[EnvelopeParams] = None,
    tol: float = 1e-3,
    settings: Optional[RadialSettings] = None,
    neighborhood_radius: float = 1e-3,
    enforce_hypotheses: bool = True,
    statement_id: str = "convex_radial_representation",
) -> TheoremReport:
    """
    Convex f bounded above near u0: f̄ = f̂_{u0}, and f̂_{u0} = f̂_v for other base points v.

    Args:
        f: Oracle declared convex
        dom: Region describing dom f with u0 = dom.center
        domain_samples: Points of dom f
        base_points: Alternative base points v (defaults to 3 interior points of dom)
        neighborhood_radius: Radius of the ball around u0 where f must be bounded above
    """
    settings = settings or RadialSettings()
    envelope = envelope or EnvelopeParams()
    boundary_samples = boundary_samples or dom.sample_boundary(32, seed=domain_samples.seed or 0)
    hyp = _Hypotheses(statement_id, enforce_hypotheses)
    hyp.record("convex", f.properties.convex, f"declared convex: {f.properties.convex}")
    ball = dom.center + neighborhood_radius * unit_ball_points(f.dim, 64, seed=0)
    near = f.eval_batch(ball)
    hyp.record(
        "bounded_above_near_u0",
        bool(np.all(np.isfinite(near))),
        {"radius": neighborhood_radius, "sup_sampled": float(np.max(near))},
    )
    hypotheses = hyp.settle()

    if base_points is None:
        base_points = dom.sample_interiorish(4, seed=1).subset(np.arange(4) > 0)
    points = np.vstack([domain_samples.points, boundary_samples.points, exterior_points(dom, boundary_samples)])
    lhs = envelope_values(f, points, envelope)
    ref = radial_values(f, dom.center, points, settings.t_schedule, settings.limit_tol, settings.window)
    rows = comparison_rows(points, lhs, ref["liminf"], gap(lhs, ref["liminf"]), kind=["envelope"] * points.shape[0])
    for i, v in enumerate(base_points.points):
        other = radial_values(f, v, points, settings.t_schedule, settings.limit_tol, settings.window)
        rows += comparison_rows(
            points, ref["liminf"], other["liminf"], gap(ref["liminf"], other["liminf"]),
            kind=[f"base_point_{i}"] * points.shape[0],
        )

    report = TheoremReport(
        statement_id=statement_id,
        rows=rows,
        tolerance=tol,
        resolutions=[{"scale": 1, "levels": envelope.levels}],
        hypotheses=hypotheses,
        banner=_banner(statement_id, enforce_hypotheses),
        metadata={"u0": dom.center.tolist(), "base_points": base_points.points.tolist()},
        enforce_hypotheses=enforce_hypotheses,
    )
    logger.info(report.summary())
    return report


@dataclass
class InfEqualityResult:
    inf_D: float
    inf_closure: float
    gap: float
    tolerance: float
    argmin_D: List[float]
    argmin_closure: List[float]
    report: TheoremReport

    @property
    def passed(self) -> bool:
        return self.report.passed


def _local_min(
    f: FunctionOracle,
    member: Any,
    x: np.ndarray,
    value: float,
    step: float,
    rounds: int = 3,
) -> Tuple[float, np.ndarray]:
    """Coordinate descent from x staying inside the set given by the `member` mask function."""
    moves = np.vstack([np.eye(x.shape[0]), -np.eye(x.shape[0])])
    for _ in range(rounds):
        for _ in range(50):
            cand = x + step * moves
            cand = cand[member(cand)]
            if cand.shape[0] == 0:
                break
            vals = f.eval_batch(cand)
            j = int(np.argmin(vals))
            if not vals[j] < value:
                break
            value, x = float(vals[j]), cand[j]
        step *= 0.5
    return value, x


def check_inf_equality(
    f: FunctionOracle,
    D: Region,
    interior_samples: SampleSet,
    boundary_samples: SampleSet,
    tol: float = 1e-6,
    settings: Optional[RadialSettings] = None,
    envelope: Optional[EnvelopeParams] = None,
    refine_rounds: int = 3,
    enforce_hypotheses: bool = True,
    statement_id: str = "inf_equality",
) -> InfEqualityResult:
    """
    Estimate inf_D f and inf_{D̄} f with the same samples and local refinement.

    Hypotheses: D̄ inside dom f at the samples, f ru-usc in D̄ relative to u0,
    f lower semicontinuous in D.
    """
    settings = settings or RadialSettings()
    hyp = _Hypotheses(statement_id, enforce_hypotheses)
    closure_points = interior_samples.concat(boundary_samples)
    off_dom = ~f.dom_mask(closure_points.points)
    hyp.record("closure_in_dom", not off_dom.any(), f"{int(off_dom.sum())} closure samples outside dom f")
    closed = D.closure()
    cert = None
    if not off_dom.any():
        cert = _certificate(hyp, "ru_usc_on_closure", f, closed, closure_points, settings)
    lsc = check_lsc_in_D(f, D, interior_samples.subset(D.contains_mask(interior_samples.points)), settings.lsc_tol, envelope)
    hyp.record("lsc_in_D", lsc.passed, {"max_gap": lsc.max_gap})
    hypotheses = hyp.settle()

    P = closure_points.points
    values = f.eval_batch(P)
    in_D = D.contains_mask(P)
    extent = float(np.max(np.ptp(P, axis=0))) if P.shape[0] > 1 else 0.0
    step = 0.5 * extent / max(P.shape[0] ** (1.0 / P.shape[1]), 1.0)

    iD = int(np.argmin(np.where(in_D, values, np.inf)))
    inf_D, x_D = _local_min(f, D.contains_mask, P[iD], float(values[iD]), step, refine_rounds)
    iC = int(np.argmin(values))
    inf_C, x_C = _local_min(f, D.closure_mask, P[iC], float(values[iC]), step, refine_rounds)
    diff = float(gap(np.array([inf_D]), np.array([inf_C]))[0])

    report = TheoremReport(
        statement_id=statement_id,
        rows=[
            {"point": x_D.tolist(), "lhs": inf_D, "rhs": inf_C, "gap": diff, "kind": "argmin_D"},
            {"point": x_C.tolist(), "lhs": inf_D, "rhs": inf_C, "gap": diff, "kind": "argmin_closure"},
        ],
        tolerance=tol,
        resolutions=[{"scale": 1, "samples": len(closure_points), "max_gap": diff}],
        hypotheses=hypotheses,
        banner=_banner(statement_id, enforce_hypotheses),
        metadata={"certificate": cert.to_dict() if cert else None},
        enforce_hypotheses=enforce_hypotheses,
    )
    logger.info(report.summary())
    return InfEqualityResult(
        inf_D=inf_D,
        inf_closure=inf_C,
        gap=diff,
        tolerance=tol,
        argmin_D=x_D.tolist(),
        argmin_closure=x_C.tolist(),
        report=report,
    )


def verify_hat_below_f(
    f: FunctionOracle,
    D: Region,
    interior_samples: SampleSet,
    boundary_samples: SampleSet,
    settings: Optional[RadialSettings] = None,
    envelope: Optional[EnvelopeParams] = None,
    enforce_hypotheses: bool = True,
    statement_id: str = "hat_below_f",
) -> TheoremReport:
    """
    Check f̂_{u0} <= f on D̄ up to the certificate slack, and dom f̂ ⊂ dom f̄ at the samples.

    The slack at u is eps_cert * (a + |f(u)|), the bound the certified modulus gives.
    """
    settings = settings or RadialSettings()
    hyp = _Hypotheses(statement_id, enforce_hypotheses)
    closure_points = interior_samples.concat(boundary_samples)
    cert = _certificate(hyp, "ru_usc_on_closure", f, D.closure(), closure_points, settings)
    hypotheses = hyp.settle()

    P = closure_points.points
    fP = f.eval_batch(P)
    radial = radial_values(f, D.center, P, settings.t_schedule, settings.limit_tol, settings.window)
    a = cert.a_used if cert is not None and cert.a_used is not None else 1.0
    with np.errstate(invalid="ignore"):
        bound = fP + settings.eps_cert * (a + np.abs(fP))
    rows = comparison_rows(P, radial["liminf"], bound, one_sided_gap(radial["liminf"], bound), kind=["hat_below_f"] * P.shape[0])

    env = envelope_values(f, P, envelope)
    violated = np.isfinite(radial["liminf"]) & ~np.isfinite(env)
    rows += comparison_rows(
        P, radial["liminf"], env, np.where(violated, np.inf, 0.0), kind=["dom_inclusion"] * P.shape[0]
    )
    report = TheoremReport(
        statement_id=statement_id,
        rows=rows,
        tolerance=1e-12,
        hypotheses=hypotheses,
        banner=_banner(statement_id, enforce_hypotheses),
        metadata={"a": a, "eps_cert": settings.eps_cert},
        enforce_hypotheses=enforce_hypotheses,
    )
    logger.info(report.summary())
    return report
