"""
Statement registry: each statement id maps to a callable that builds the
catalog objects of a ProblemSpec, runs the matching verifier and returns a
TheoremReport.
"""

import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

from radialrep.analysis import algebra, radial, relaxation
from radialrep.analysis.envelope import EnvelopeParams, check_lsc_in_D
from radialrep.analysis.modulus import RuUscCertificate, certify_ru_usc, convex_bound_check
from radialrep.analysis.reports import TheoremReport, one_sided_gap
from radialrep.analysis.starshape import Region, check_strong_star_shape
from radialrep.catalog import build_constraint_set, build_function, build_integrand, build_region
from radialrep.core.errors import ProblemSpecError
from radialrep.core.sampling import SampleSet, geometric_t_schedule, make_samples, user_supplied
from radialrep.core.utils import merge_config
from radialrep.runner.problem import ProblemSpec

logger = logging.getLogger(__name__)

StatementRunner = Callable[[ProblemSpec, Dict[str, Any]], TheoremReport]

_STATEMENTS: Dict[str, StatementRunner] = {}


def statement(*ids: str) -> Callable[[StatementRunner], StatementRunner]:
    def decorator(fn: StatementRunner) -> StatementRunner:
        for statement_id in ids:
            _STATEMENTS[statement_id] = fn
        return fn
    return decorator


def list_statements() -> List[str]:
    return sorted(_STATEMENTS)


def run_statement(spec: ProblemSpec, config: Optional[Dict[str, Any]] = None) -> TheoremReport:
    """
    Run the verifier named by spec.statement.

    Raises:
        ProblemSpecError: unknown statement id or malformed catalog references
        HypothesisNotMetError: the statement refused to run
    """
    runner = _STATEMENTS.get(spec.statement)
    if runner is None:
        raise ProblemSpecError("statement", f"unknown statement '{spec.statement}' (known: {', '.join(list_statements())})")
    logger.info(f"Running '{spec.name}' ({spec.statement}, seed {spec.seed})")
    report = runner(spec, config or {})
    report.metadata.setdefault("problem", spec.name)
    report.metadata.setdefault("seed", spec.seed)
    return report


# -- shared parameter plumbing -------------------------------------------------

def _section(spec: ProblemSpec, config: Dict[str, Any], name: str) -> Dict[str, Any]:
    override = spec.param(name, {})
    if not isinstance(override, dict):
        raise ProblemSpecError(f"params.{name}", "must be an object")
    return merge_config(config.get(name, {}) or {}, override)


def _t_schedule(spec: ProblemSpec, default_k_max: int) -> List[float]:
    ts = spec.param("t_schedule")
    if ts is None:
        return geometric_t_schedule(int(spec.param("k_max", default_k_max))).tolist()
    if not isinstance(ts, list) or not ts:
        raise ProblemSpecError("params.t_schedule", "must be a nonempty list of numbers in [0, 1[")
    return [float(t) for t in ts]


def settings(spec: ProblemSpec, config: Dict[str, Any]) -> radial.RadialSettings:
    cert = _section(spec, config, "certification")
    rad = _section(spec, config, "radial")
    sampling = config.get("sampling", {}) or {}
    return radial.RadialSettings(
        t_schedule=geometric_t_schedule(int(cert.get("k_max", 40))).tolist(),
        star_t_schedule=geometric_t_schedule(int(sampling.get("star_k_max", 20))).tolist(),
        window=int(rad.get("window", radial.DEFAULT_WINDOW)),
        limit_tol=float(rad.get("tolerance", radial.DEFAULT_LIMIT_TOL)),
        eps_cert=float(cert.get("eps_cert", 1e-6)),
        tail=int(cert.get("tail", 5)),
        a_candidates=cert.get("a_candidates"),
        lsc_tol=float(rad.get("lsc_tol", 1e-3)),
    )


def envelope_params(spec: ProblemSpec, config: Dict[str, Any]) -> EnvelopeParams:
    env = _section(spec, config, "envelope")
    try:
        params = EnvelopeParams(**env)
    except TypeError as e:
        raise ProblemSpecError("params.envelope", str(e)) from e
    return params.refined(spec.param("resolution_scale", 1))


def samples_for(spec: ProblemSpec, config: Dict[str, Any], D: Region) -> Tuple[SampleSet, SampleSet]:
    """(interior, boundary) samples of D from the problem's counts, seed and optional point lists."""
    defaults = config.get("sampling", {}) or {}
    if "interior_points" in spec.samples:
        interior = user_supplied(spec.samples["interior_points"], D.dim)
    else:
        interior = D.sample_interiorish(spec.count("interior", int(defaults.get("interior", 64))), seed=spec.seed)
    if "boundary_points" in spec.samples:
        boundary = user_supplied(spec.samples["boundary_points"], D.dim)
    else:
        boundary = D.sample_boundary(spec.count("boundary", int(defaults.get("boundary", 50))), seed=spec.seed)
    return interior, boundary


def _grid(spec: ProblemSpec) -> SampleSet:
    grid = spec.samples.get("grid")
    if not isinstance(grid, dict):
        raise ProblemSpecError("samples.grid", "a uniform-grid descriptor {box, resolution} is required")
    return make_samples(dict(grid, kind="uniform-grid"))


def _check_report(statement_id: str, passed: bool, detail: Any, tolerance: float = 0.0, **metadata: Any) -> TheoremReport:
    return TheoremReport(
        statement_id=statement_id,
        rows=[{"point": [], "lhs": 0.0 if passed else 1.0, "rhs": 0.0, "gap": 0.0 if passed else 1.0, "detail": str(detail)}],
        tolerance=tolerance,
        metadata=metadata,
    )


def certificate_report(statement_id: str, cert: RuUscCertificate, **metadata: Any) -> TheoremReport:
    """Rows are the tail of the last profile tried: lhs = sampled Δ(t), rhs = eps_cert."""
    profile = cert.profiles[-1]
    k0 = len(profile.delta_estimates) - cert.tail_length
    rows = []
    for k in range(k0, len(profile.delta_estimates)):
        delta = profile.delta_estimates[k]
        rows.append({
            "point": profile.argmax_points[k],
            "lhs": delta,
            "rhs": cert.tolerance,
            "gap": float(one_sided_gap(delta, cert.tolerance)),
            "t": profile.t_schedule[k],
            "a": profile.a,
        })
    return TheoremReport(
        statement_id=statement_id,
        rows=rows,
        tolerance=0.0,
        metadata=dict(metadata, certificate=cert.to_dict()),
    )


# -- modulus, star shape, envelope ----------------------------------------------------

@statement("convex_bound")
def _convex_bound(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    f = build_function(spec.require("function"))
    D = build_region(spec.require("region"))
    samples = D.sample_interiorish(spec.count("interior", 1000), seed=spec.seed)
    result = convex_bound_check(f, D, _t_schedule(spec, 20), samples)
    w = result.witness or {}
    return TheoremReport(
        statement_id="convex_bound",
        rows=[{
            "point": w.get("u", D.center.tolist()),
            "lhs": max(result.max_excess, 0.0),
            "rhs": 0.0,
            "gap": max(result.max_excess, 0.0),
            "t": w.get("t", float("nan")),
        }],
        tolerance=0.0,
        metadata={"a": result.a, "witness": result.witness, "samples": len(samples)},
    )


@statement("ru_usc_certificate")
def _ru_usc(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    f = build_function(spec.require("function"))
    D = build_region(spec.require("region"))
    s = settings(spec, config)
    interior, boundary = samples_for(spec, config, D)
    D_samples = radial.points_in(D, interior, boundary)
    cert = certify_ru_usc(f, D, s.a_candidates, s.t_schedule, D_samples, s.eps_cert, s.tail)
    return certificate_report("ru_usc_certificate", cert, function=f.describe(), region=D.describe())


@statement("star_shape")
def _star_shape(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    D = build_region(spec.require("region"))
    interior, boundary = samples_for(spec, config, D)
    result = check_strong_star_shape(D, _t_schedule(spec, 20), interior.concat(boundary), max_violations=100)
    rows = [{"point": u, "lhs": 1.0, "rhs": 0.0, "gap": 1.0, "t": t} for t, u in result.violations]
    if not rows:
        rows = [{"point": D.center.tolist(), "lhs": 0.0, "rhs": 0.0, "gap": 0.0, "t": float("nan")}]
    return TheoremReport(
        statement_id="star_shape",
        rows=rows,
        tolerance=0.0,
        metadata={"label": result.label, "tested_points": result.tested_points, "region": D.describe()},
    )


@statement("lsc_in_D")
def _lsc_in_D(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    f = build_function(spec.require("function"))
    D = build_region(spec.require("region"))
    interior, _ = samples_for(spec, config, D)
    tol = float(spec.param("tolerance", _section(spec, config, "radial").get("lsc_tol", 1e-3)))
    return check_lsc_in_D(f, D, interior, tol, envelope_params(spec, config))


# -- radial representations ------------------------------------------------------------

@statement("radial_representation", "radial_representation_seq")
def _radial_representation(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    f = build_function(spec.require("function"))
    D = build_region(spec.require("region"))
    interior, boundary = samples_for(spec, config, D)
    section = _section(spec, config, "radial")
    scales = spec.param("scales", section.get("scales", [1, 2]))
    return radial.verify_radial_representation(
        f, D, boundary, interior,
        envelope=envelope_params(spec, config),
        tol=float(spec.param("tolerance", 1e-3)),
        settings=settings(spec, config),
        scales=scales,
        convergence_slack=section.get("convergence_slack"),
        enforce_hypotheses=spec.enforce_hypotheses,
        statement_id=spec.statement,
    )


@statement("limit_exists_on_closure", "limit_exists_on_closure_seq")
def _limit_exists(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    f = build_function(spec.require("function"))
    D = build_region(spec.require("region"))
    interior, boundary = samples_for(spec, config, D)
    s = settings(spec, config)
    return radial.verify_limit_exists_on_closure(
        f, D, boundary, interior,
        tol=float(spec.param("tolerance", s.limit_tol)),
        settings=s,
        enforce_hypotheses=spec.enforce_hypotheses,
        statement_id=spec.statement,
    )


@statement("envelope_representation", "envelope_representation_seq")
def _envelope_representation(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    f = build_function(spec.require("function"))
    g = build_function(spec.g, "g") if spec.g is not None else f
    dom = build_region(spec.require("region"))
    interior, boundary = samples_for(spec, config, dom)
    return radial.verify_envelope_representation(
        f, g, dom, interior, boundary,
        envelope=envelope_params(spec, config),
        tol=float(spec.param("tolerance", 1e-3)),
        settings=settings(spec, config),
        enforce_hypotheses=spec.enforce_hypotheses,
        statement_id=spec.statement,
    )


@statement("ruusc_representation")
def _ruusc_representation(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    f = build_function(spec.require("function"))
    dom = build_region(spec.require("region"))
    interior, boundary = samples_for(spec, config, dom)
    return radial.verify_ruusc_representation(
        f, dom, interior, boundary,
        envelope=envelope_params(spec, config),
        tol=float(spec.param("tolerance", 1e-3)),
        settings=settings(spec, config),
        enforce_hypotheses=spec.enforce_hypotheses,
    )


@statement("convex_radial_representation")
def _convex_radial(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    f = build_function(spec.require("function"))
    dom = build_region(spec.require("region"))
    interior, boundary = samples_for(spec, config, dom)
    base = spec.samples.get("base_points")
    return radial.verify_convex_radial_representation(
        f, dom, interior,
        base_points=user_supplied(base, dom.dim) if base is not None else None,
        boundary_samples=boundary,
        envelope=envelope_params(spec, config),
        tol=float(spec.param("tolerance", 1e-3)),
        settings=settings(spec, config),
        neighborhood_radius=float(spec.param("neighborhood_radius", 1e-3)),
        enforce_hypotheses=spec.enforce_hypotheses,
    )


@statement("inf_equality")
def _inf_equality(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    f = build_function(spec.require("function"))
    D = build_region(spec.require("region"))
    interior, boundary = samples_for(spec, config, D)
    result = radial.check_inf_equality(
        f, D, interior, boundary,
        tol=float(spec.param("tolerance", 1e-6)),
        settings=settings(spec, config),
        envelope=envelope_params(spec, config),
        enforce_hypotheses=spec.enforce_hypotheses,
    )
    return result.report


@statement("hat_below_f")
def _hat_below_f(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    f = build_function(spec.require("function"))
    D = build_region(spec.require("region"))
    interior, boundary = samples_for(spec, config, D)
    return radial.verify_hat_below_f(
        f, D, interior, boundary,
        settings=settings(spec, config),
        envelope=envelope_params(spec, config),
        enforce_hypotheses=spec.enforce_hypotheses,
    )


# -- calculus ---------------------------------------------------------------------------

def _certified(spec: ProblemSpec, config: Dict[str, Any], key: str = "function") -> algebra.CertifiedFunction:
    f = build_function(spec.require(key), key)
    D = build_region(spec.require("region"))
    interior, boundary = samples_for(spec, config, D)
    s = settings(spec, config)
    return algebra.certify(f, D, radial.points_in(D, interior, boundary), s.a_candidates, s.t_schedule, s.eps_cert, s.tail)


def _derived_report(statement_id: str, result: algebra.CertifiedFunction) -> TheoremReport:
    return certificate_report(statement_id, result.certificate, provenance=result.provenance)


@statement("translate")
def _translate(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    return _derived_report("translate", algebra.translate(_certified(spec, config), float(spec.param("c", 0.0))))


@statement("scale")
def _scale(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    return _derived_report("scale", algebra.scale(_certified(spec, config), float(spec.param("lambda", 1.0))))


def _holder(spec: ProblemSpec, g, D: Region, samples: SampleSet) -> Optional[algebra.HolderCheck]:
    params = spec.param("holder")
    if params is None:
        return None
    try:
        return algebra.check_holder_perturbation(
            g, params["alpha"], params["beta"], params["c"], params.get("c_prime", 0.0),
            params.get("K", 0.0), D, samples,
        )
    except KeyError as e:
        raise ProblemSpecError(f"params.holder.{e.args[0]}", "required") from e


@statement("add")
def _add(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    f = _certified(spec, config)
    g_oracle = build_function(spec.require("g"), "g")
    g = algebra.certify(g_oracle, f.region, f.samples, None, f.t_schedule, f.eps_cert, f.tail)
    holder = _holder(spec, g_oracle, f.region, f.samples)
    return _derived_report("add", algebra.add(f, g, route=spec.param("route"), holder=holder))


@statement("multiply")
def _multiply(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    f = _certified(spec, config)
    g_oracle = build_function(spec.require("g"), "g")
    g = algebra.certify(g_oracle, f.region, f.samples, None, f.t_schedule, f.eps_cert, f.tail)
    return _derived_report("multiply", algebra.multiply(f, g))


@statement("holder_perturbation")
def _holder_perturbation(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    g = build_function(spec.require("function"))
    D = build_region(spec.require("region"))
    interior, _ = samples_for(spec, config, D)
    check = _holder(spec, g, D, interior)
    if check is None:
        raise ProblemSpecError("params.holder", "required by statement 'holder_perturbation'")
    return _check_report("holder_perturbation", check.passed, check.failures or "A1 and A2 hold", a=check.a, **check.parameters)


@statement("uniform_continuity")
def _uniform_continuity(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    g = build_function(spec.require("function"))
    D = build_region(spec.require("region"))
    interior, _ = samples_for(spec, config, D)
    s = settings(spec, config)
    result = algebra.check_uniform_continuity_ruusc(g, D, interior, s.t_schedule, s.eps_cert, s.tail)
    rows = [
        {"point": [r["t"]], "lhs": r["delta"], "rhs": r["omega"], "gap": float(one_sided_gap(r["delta"], r["omega"]))}
        for r in result.rows
    ]
    if not result.passed:
        rows.append({"point": [1.0], "lhs": rows[-1]["rhs"], "rhs": s.eps_cert, "gap": float(one_sided_gap(rows[-1]["rhs"], s.eps_cert))})
    return TheoremReport(statement_id="uniform_continuity", rows=rows, tolerance=1e-12, metadata={"radius": result.radius})


@statement("inf_convolution")
def _inf_convolution(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    grid = _grid(spec)
    f = _certified(spec, config)
    g_oracle = build_function(spec.require("g"), "g")
    g_region = build_region(spec.param("g_region", {"name": "singleton", "params": {"point": [0.0] * g_oracle.dim}}), "params.g_region")
    g_samples = g_region.sample_interiorish(spec.count("interior", 64), seed=spec.seed)
    g = algebra.certify(g_oracle, g_region, g_samples, None, f.t_schedule, f.eps_cert, f.tail)
    route = spec.param("route", "g-bounded")
    cert = algebra.check_infconv_ruusc(f, g, grid, route)
    return certificate_report("inf_convolution", cert, route=route)


# -- relaxation ------------------------------------------------------------------------

@statement("s_epsilon_properties")
def _s_epsilon(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    report = relaxation.check_s_epsilon_properties(
        float(spec.param("eps", 1.0)),
        closure_count=spec.count("closure", 10_000),
        t_schedule=_t_schedule(spec, 20),
        rank_one_count=spec.count("rank_one", 10_000),
        seed=spec.seed,
    )
    return report.to_report("s_epsilon_properties")


@statement("convex_constraint_h3_h4")
def _convex_constraint(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    S = build_constraint_set(spec.require("constraint_set"))
    report = relaxation.check_convex_constraint_h3_h4(S, spec.count("closure", 2000), _t_schedule(spec, 20), spec.seed)
    return report.to_report("convex_constraint_h3_h4")


@statement("growth_and_lipschitz")
def _growth(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    L = build_integrand(spec.require("integrand"))
    check = relaxation.check_growth_and_lipschitz(
        L, radius=float(spec.param("radius", 10.0)), count=spec.count("count", 2000), seed=spec.seed
    )
    return _check_report("growth_and_lipschitz", check.passed, check.failures or "declared constants hold", estimates=check.to_dict())


@statement("quasiconvexity_necessary")
def _quasiconvexity(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    L = build_integrand(spec.require("integrand"))
    result = relaxation.check_quasiconvexity_necessary(
        L, count=spec.count("count", 1000), n=int(spec.param("mesh", 8)), seed=spec.seed
    )
    return _check_report("quasiconvexity_necessary", result.passed, result.label, tested=result.tested, witness=result.witness)


def _fields(spec: ProblemSpec, S: relaxation.ConstraintSet) -> List[relaxation.MeshField]:
    return relaxation.sample_constrained_fields(
        S, int(spec.param("mesh", 8)), spec.count("fields", 100), spec.seed, float(spec.param("amplitude", 0.1))
    )


@statement("J_ruusc")
def _J_ruusc(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    L = build_integrand(spec.require("integrand"))
    S = build_constraint_set(spec.require("constraint_set"))
    ts = spec.param("t_schedule", [0.9, 0.99, 0.999])
    return relaxation.verify_J_ruusc(
        L, S,
        n=int(spec.param("mesh", 8)),
        t_schedule=ts,
        count=spec.count("fields", 100),
        seed=spec.seed,
        amplitude=float(spec.param("amplitude", 0.1)),
        enforce_hypotheses=spec.enforce_hypotheses,
    )


@statement("radial_equals_J")
def _radial_equals_J(spec: ProblemSpec, config: Dict[str, Any]) -> TheoremReport:
    L = build_integrand(spec.require("integrand"))
    S = build_constraint_set(spec.require("constraint_set"))
    return relaxation.radial_energy_report(
        _fields(spec, S), L, _t_schedule(spec, 20), float(spec.param("tolerance", 1e-6)), S
    )
