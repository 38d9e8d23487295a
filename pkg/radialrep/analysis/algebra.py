"""
Calculus of certified functions: translation, scaling, sums, products,
perturbations and inf-convolution.

Each operation checks the hypothesis route that makes the result ru-usc,
stores the constant the argument suggests as a hint, and then recertifies the
result from scratch. The hint never replaces certification.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from radialrep.analysis.modulus import (
    DEFAULT_EPS_CERT,
    DEFAULT_TAIL,
    RuUscCertificate,
    certification_schedule,
    certify_ru_usc,
    default_a_candidates,
    modulus_profile,
)
from radialrep.analysis.starshape import Region
from radialrep.catalog import product_of, scaled_by, sum_of, translated_by
from radialrep.core.errors import DomainError, HypothesisNotMetError, SamplingError
from radialrep.core.oracle import FunctionOracle, FunctionProperties
from radialrep.core.sampling import SampleSet, geometric_t_schedule, unit_directions, validate_t_schedule
from radialrep.core.tabulated import TabulatedOracle

logger = logging.getLogger(__name__)

ROUTES = ("bounded_below", "g_bounded", "continuous_compact", "holder")
INFCONV_ROUTES = ("both-bounded-below", "g-bounded")
_PROBE_LEVELS = (10, 20)


@dataclass
class CertifiedFunction:
    """An oracle with its region, samples and ru-usc certificate."""

    oracle: FunctionOracle
    region: Region
    samples: SampleSet
    certificate: Optional[RuUscCertificate]
    provenance: Dict[str, Any] = field(default_factory=dict)
    t_schedule: Optional[List[float]] = None
    eps_cert: float = DEFAULT_EPS_CERT
    tail: int = DEFAULT_TAIL

    @property
    def supported(self) -> bool:
        return self.certificate is not None and self.certificate.supported

    @property
    def a(self) -> Optional[float]:
        return self.certificate.a_used if self.certificate is not None else None

    @property
    def name(self) -> str:
        return self.oracle.name

    def to_dict(self) -> Dict[str, Any]:
        return {
            "function": self.oracle.describe(),
            "region": self.region.describe(),
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "provenance": self.provenance,
        }


def certify(
    oracle: FunctionOracle,
    region: Region,
    samples: Optional[SampleSet] = None,
    a_candidates: Optional[Sequence[float]] = None,
    t_schedule: Optional[Sequence[float]] = None,
    eps_cert: float = DEFAULT_EPS_CERT,
    tail: int = DEFAULT_TAIL,
    operation: str = "base",
    hint: Optional[Dict[str, Any]] = None,
    inputs: Sequence["CertifiedFunction"] = (),
) -> CertifiedFunction:
    """Run certify_ru_usc and wrap the result."""
    samples = samples if samples is not None else region.sample_interiorish(256, seed=0)
    ts = list(certification_schedule() if t_schedule is None else t_schedule)
    cert = certify_ru_usc(oracle, region, a_candidates, ts, samples, eps_cert, tail)
    provenance = {
        "operation": operation,
        "ref": oracle.describe(),
        "hint": hint or {},
        "inputs": [cf.provenance for cf in inputs],
    }
    return CertifiedFunction(oracle, region, samples, cert, provenance, ts, eps_cert, tail)


def recertify(cf: CertifiedFunction, a_candidates: Optional[Sequence[float]] = None) -> RuUscCertificate:
    """Certify the oracle again from scratch with the stored samples and schedule."""
    return certify_ru_usc(cf.oracle, cf.region, a_candidates, cf.t_schedule, cf.samples, cf.eps_cert, cf.tail)


def _require_supported(operation: str, **functions: CertifiedFunction) -> None:
    failed = {
        name: f"{cf.name}: {cf.certificate.verdict if cf.certificate else 'not certified'}"
        for name, cf in functions.items()
        if not cf.supported
    }
    if failed:
        raise HypothesisNotMetError(operation, failed)


def _candidates(first: Sequence[float], oracle: FunctionOracle, region: Region) -> List[float]:
    out: List[float] = []
    for a in list(first) + default_a_candidates(oracle, region):
        a = float(a)
        if a > 0 and a not in out:
            out.append(a)
    return out


def _derive(
    parent: CertifiedFunction,
    oracle: FunctionOracle,
    operation: str,
    hint: Dict[str, Any],
    inputs: Sequence[CertifiedFunction],
    first_candidates: Sequence[float] = (),
) -> CertifiedFunction:
    result = certify(
        oracle,
        parent.region,
        parent.samples,
        _candidates(first_candidates, oracle, parent.region),
        parent.t_schedule,
        parent.eps_cert,
        parent.tail,
        operation=operation,
        hint=hint,
        inputs=inputs,
    )
    if not result.supported:
        logger.warning(f"{operation}: recertification of {oracle.name} did not support ({result.certificate.verdict})")
    return result


def translate(f: CertifiedFunction, c: float) -> CertifiedFunction:
    """f + c, with the suggested constant a + |c|."""
    _require_supported("translate", f=f)
    if c == 0:
        return f
    a = f.a + abs(c)
    return _derive(f, translated_by(f.oracle, c), "translate", {"c": c, "a": a}, [f], [a])


def scale(f: CertifiedFunction, lam: float) -> CertifiedFunction:
    """λ f for λ >= 0, with the suggested constant 1 and bound factor max{λ a, 1}."""
    if lam < 0:
        raise DomainError(f"Scaling preserves ru-usc only for nonnegative factors, got {lam}")
    _require_supported("scale", f=f)
    if lam == 1:
        return f
    factor = max(lam * f.a, 1.0)
    return _derive(f, scaled_by(f.oracle, lam), "scale", {"lambda": lam, "a": 1.0, "bound_factor": factor}, [f], [1.0])


# -- sampled bounds --------------------------------------------------------------

def _probe_points(D: Region, samples: SampleSet, count: int = 64) -> Dict[int, np.ndarray]:
    """Samples of D, then boundary samples pulled toward u0 by 2^-k for each probe level k."""
    boundary = D.sample_boundary(count, seed=(samples.seed or 0) + 7).points
    out = {0: samples.points}
    for k in _PROBE_LEVELS:
        t = 1.0 - 2.0 ** -k
        P = t * boundary + (1.0 - t) * D.center
        out[k] = P[D.contains_mask(P)]
    return out


def sampled_bounds(f: FunctionOracle, D: Region, samples: SampleSet) -> Dict[str, Any]:
    """
    Estimate inf and sup of f on D and whether they look finite.

    Declared bounds take precedence. Otherwise values on points approaching
    the boundary at two depths are compared: a drop (rise) by more than
    1 + |value| between the depths counts as unbounded below (above).
    """
    probes = _probe_points(D, samples)
    values = {k: f.eval_batch(P) for k, P in probes.items() if P.shape[0]}
    every = np.concatenate(list(values.values()))
    if not np.all(np.isfinite(every)):
        raise DomainError(f"{f.name} is +inf at sampled points of '{D.name}'")
    lo = {k: float(v.min()) for k, v in values.items()}
    hi = {k: float(v.max()) for k, v in values.items()}
    shallow, deep = _PROBE_LEVELS
    props = f.properties
    below = props.lower_bound is not None
    above = props.upper_bound is not None
    if not below:
        below = not (deep in lo and shallow in lo and lo[deep] < lo[shallow] - (1.0 + abs(lo[shallow])))
    if not above:
        above = not (deep in hi and shallow in hi and hi[deep] > hi[shallow] + (1.0 + abs(hi[shallow])))
    return {
        "inf": float(every.min()),
        "sup": float(every.max()),
        "bounded_below": bool(below),
        "bounded_above": bool(above),
        "source": "declared" if props.lower_bound is not None or props.upper_bound is not None else "sampled",
    }


# -- perturbation checks ----------------------------------------------------------

@dataclass
class HolderCheck:
    passed: bool
    a: float
    parameters: Dict[str, float]
    failures: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed


def _delta_function(delta: Union[float, Callable[[float], float]]) -> Callable[[float], float]:
    if callable(delta):
        return delta
    K = float(delta)
    return lambda t: K * (1.0 - t)


def check_holder_perturbation(
    g: FunctionOracle,
    alpha: float,
    beta: float,
    c: float,
    c_prime: float,
    delta: Union[float, Callable[[float], float]],
    D: Region,
    samples: Optional[SampleSet] = None,
    t_schedule: Optional[Sequence[float]] = None,
) -> HolderCheck:
    """
    Check the radial Hölder condition and the coercivity bound on samples.

    Args:
        g: Real-valued oracle
        alpha: Exponent in |g(t u + (1 - t) u0) - g(u)| <= δ(t)(1 + |u|^α + |u0|^α)
        beta: Exponent in c|u|^β - c′ <= g(u), beta >= alpha
        c: Positive coercivity constant
        c_prime: Nonnegative offset
        delta: δ as a callable of t, or K for δ(t) = K (1 - t)
        D: Region with u0 = D.center

    Returns:
        HolderCheck with a = c′ + c (2 + |u0|^α)
    """
    if beta < alpha or c <= 0 or c_prime < 0 or alpha < 0:
        raise DomainError(f"Holder perturbation needs beta >= alpha >= 0, c > 0, c' >= 0 (got {alpha}, {beta}, {c}, {c_prime})")
    samples = samples if samples is not None else D.sample_interiorish(1000, seed=0)
    ts = validate_t_schedule(geometric_t_schedule(20) if t_schedule is None else t_schedule)
    d = _delta_function(delta)
    U = samples.points
    u0 = D.center
    norms = np.linalg.norm(U, axis=1)
    n0 = float(np.linalg.norm(u0))
    gU = g.eval_batch(U)
    failures: Dict[str, Any] = {}

    for t in ts:
        moved = g.eval_batch(t * U + (1.0 - t) * u0)
        lhs = np.abs(moved - gU)
        rhs = d(float(t)) * (1.0 + norms ** alpha + n0 ** alpha)
        bad = np.flatnonzero(lhs > rhs + 1e-12 * (1.0 + np.abs(rhs)))
        if bad.size:
            failures["A1"] = {"t": float(t), "u": U[bad[0]].tolist(), "lhs": float(lhs[bad[0]]), "rhs": float(rhs[bad[0]])}
            break

    lower = c * norms ** beta - c_prime
    bad = np.flatnonzero(lower > gU + 1e-12 * (1.0 + np.abs(gU)))
    if bad.size:
        failures["A2"] = {"u": U[bad[0]].tolist(), "g": float(gU[bad[0]]), "bound": float(lower[bad[0]])}

    check = HolderCheck(
        passed=not failures,
        a=c_prime + c * (2.0 + n0 ** alpha),
        parameters={"alpha": alpha, "beta": beta, "c": c, "c_prime": c_prime},
        failures=failures,
    )
    logger.info(f"Holder perturbation check for {g.name}: {'pass' if check.passed else 'fail ' + str(list(failures))}")
    return check


@dataclass
class UniformContinuityResult:
    passed: bool
    radius: float
    rows: List[Dict[str, float]]


def check_uniform_continuity_ruusc(
    g: FunctionOracle,
    D: Region,
    samples: Optional[SampleSet] = None,
    t_schedule: Optional[Sequence[float]] = None,
    eps: float = DEFAULT_EPS_CERT,
    tail: int = DEFAULT_TAIL,
    directions: int = 16,
) -> UniformContinuityResult:
    """
    Compare Δ¹(t) with the sampled modulus of continuity ω((1 - t) sup |u - u0|).

    ω is sampled on the radial pairs and on short random pairs inside D.
    Passes when Δ¹ <= ω everywhere and ω vanishes along the tail.
    """
    samples = samples if samples is not None else D.sample_interiorish(256, seed=0)
    ts = np.asarray(certification_schedule() if t_schedule is None else t_schedule, dtype=float)
    U = samples.points
    gU = g.eval_batch(U)
    if not np.all(np.isfinite(gU)):
        raise DomainError(f"{g.name} must be finite on '{D.name}'")
    radius = float(np.max(np.linalg.norm(U - D.center, axis=1)))
    dirs = unit_directions(g.dim, directions, seed=(samples.seed or 0) + 3)
    profile = modulus_profile(g, D, 1.0, ts, samples, refine=False)

    rows = []
    for t, delta in zip(ts, profile.delta_estimates):
        h = (1.0 - t) * radius
        radial = np.abs(g.eval_batch(t * U + (1.0 - t) * D.center) - gU)
        P = (U[:, None, :] + h * dirs[None, :, :]).reshape(-1, g.dim)
        inside = D.contains_mask(P)
        near = np.abs(g.eval_batch(P[inside]) - np.repeat(gU, directions)[inside]) if inside.any() else np.zeros(1)
        omega = float(max(radial.max(), near.max()))
        rows.append({"t": float(t), "delta": float(delta), "omega": omega})

    within = all(r["delta"] <= r["omega"] + 1e-12 for r in rows)
    vanishing = max(r["omega"] for r in rows[-tail:]) <= eps
    logger.info(f"Uniform continuity check for {g.name} on '{D.name}': within={within}, vanishing={vanishing}")
    return UniformContinuityResult(passed=within and vanishing, radius=radius, rows=rows)


# -- sums and products --------------------------------------------------------------

def add(
    f: CertifiedFunction,
    g: Union[CertifiedFunction, FunctionOracle],
    route: Optional[str] = None,
    holder: Optional[HolderCheck] = None,
) -> CertifiedFunction:
    """
    f + g on the region of f, through the first hypothesis route that holds.

    Routes: bounded_below (both certified, both bounded below), g_bounded
    (both certified, g bounded), continuous_compact (g continuous on a bounded
    region), holder (g passed check_holder_perturbation, f bounded below).

    Raises:
        HypothesisNotMetError: if no route applies, with the diagnostic per route
    """
    _require_supported("add", f=f)
    if route is not None and route not in ROUTES:
        raise DomainError(f"Unknown route {route!r}; expected one of {ROUTES}")
    g_cf = g if isinstance(g, CertifiedFunction) else None
    g_oracle = g_cf.oracle if g_cf else g
    D = f.region
    fb = sampled_bounds(f.oracle, D, f.samples)
    gb = sampled_bounds(g_oracle, D, f.samples)
    g_certified = g_cf is not None and g_cf.supported

    diagnostics: Dict[str, str] = {}
    for name in ([route] if route else ROUTES):
        if name == "bounded_below":
            ok = g_certified and fb["bounded_below"] and gb["bounded_below"]
            diagnostics[name] = f"g certified={g_certified}, f bounded below={fb['bounded_below']}, g bounded below={gb['bounded_below']}"
        elif name == "g_bounded":
            ok = g_certified and gb["bounded_below"] and gb["bounded_above"]
            diagnostics[name] = f"g certified={g_certified}, sampled |g| <= {max(abs(gb['inf']), abs(gb['sup'])):.4g}, bounded={gb['bounded_below'] and gb['bounded_above']}"
        elif name == "continuous_compact":
            lo, hi = D.bounding_box()
            bounded = bool(np.all(np.isfinite(lo)) and np.all(np.isfinite(hi)))
            ok = bounded and g_oracle.properties.continuous
            if ok:
                ok = check_uniform_continuity_ruusc(g_oracle, D, f.samples, f.t_schedule, f.eps_cert, f.tail).passed
            diagnostics[name] = f"bounded region={bounded}, g continuous={g_oracle.properties.continuous}, uniform continuity={ok}"
        else:
            ok = holder is not None and holder.passed and fb["bounded_below"]
            diagnostics[name] = f"holder check={'missing' if holder is None else holder.passed}, f bounded below={fb['bounded_below']}"
        if ok:
            b = g_cf.a if g_certified else (holder.a if name == "holder" and holder else 1.0)
            hint = {"route": name, "a": 1.0, "delta_factor": max(f.a + b, 1.0)}
            logger.info(f"add {f.name} + {g_oracle.name} via route {name}")
            inputs = [f] + ([g_cf] if g_cf else [])
            return _derive(f, sum_of(f.oracle, g_oracle), "add", hint, inputs, [1.0])
    raise HypothesisNotMetError("add", diagnostics)


def multiply(f: CertifiedFunction, g: CertifiedFunction) -> CertifiedFunction:
    """
    f g when both sampled infima over D are strictly positive.

    The stored hint is the factor 1 + 1/inf f + 1/inf g of the product bound.
    """
    _require_supported("multiply", f=f, g=g)
    D = f.region
    fb = sampled_bounds(f.oracle, D, f.samples)
    gb = sampled_bounds(g.oracle, D, f.samples)
    failed = {}
    if not fb["inf"] > 0:
        failed["inf_f_positive"] = f"sampled inf of {f.name} is {fb['inf']:.6g}"
    if not gb["inf"] > 0:
        failed["inf_g_positive"] = f"sampled inf of {g.name} is {gb['inf']:.6g}"
    if failed:
        raise HypothesisNotMetError("multiply", failed)
    hint = {
        "a": 1.0,
        "margin": min(fb["inf"], gb["inf"]),
        "factor": 1.0 + 1.0 / fb["inf"] + 1.0 / gb["inf"],
    }
    return _derive(f, product_of(f.oracle, g.oracle), "multiply", hint, [f, g], [1.0])


# -- inf-convolution ------------------------------------------------------------------

def _oracle(h: Union[CertifiedFunction, FunctionOracle]) -> FunctionOracle:
    return h.oracle if isinstance(h, CertifiedFunction) else h


def inf_convolution(
    f: Union[CertifiedFunction, FunctionOracle],
    g: Union[CertifiedFunction, FunctionOracle],
    grid: SampleSet,
    chunk: int = 256,
) -> TabulatedOracle:
    """
    Min-plus convolution (f ▽ g)(u) = min over grid nodes v of f(u - v) + g(v).

    Output nodes are the grid nodes; f is evaluated at u - v wherever that
    falls. Nodes with no finite candidate get +inf.
    """
    f, g = _oracle(f), _oracle(g)
    if grid.axes is None:
        raise SamplingError("inf_convolution needs a uniform-grid sample set")
    if f.dim != grid.dim or g.dim != grid.dim:
        raise DomainError(f"Grid dimension {grid.dim} does not match f ({f.dim}) and g ({g.dim})")
    nodes = grid.points
    gV = g.eval_batch(nodes)
    keep = np.isfinite(gV)
    V, gV = nodes[keep], gV[keep]
    out = np.full(nodes.shape[0], np.inf)
    for start in range(0, nodes.shape[0], chunk):
        U = nodes[start:start + chunk]
        diff = (U[:, None, :] - V[None, :, :]).reshape(-1, f.dim)
        total = f.eval_batch(diff).reshape(U.shape[0], V.shape[0]) + gV[None, :]
        if total.shape[1]:
            out[start:start + chunk] = total.min(axis=1)
    lower = None
    if f.properties.lower_bound is not None and g.properties.lower_bound is not None:
        lower = f.properties.lower_bound + g.properties.lower_bound
    table = TabulatedOracle(
        name=f"({f.name} infconv {g.name})",
        axes=grid.axes,
        values=out,
        properties=FunctionProperties(convex=f.properties.convex and g.properties.convex, lower_bound=lower),
        params={"grid": grid.provenance},
    )
    logger.info(f"Inf-convolution of {f.name} and {g.name} on {nodes.shape[0]} nodes ({V.shape[0]} finite g nodes)")
    return table


def _grid_bounds(h: FunctionOracle, nodes: np.ndarray) -> Dict[str, Any]:
    """Sampled bounds of h over its domain on the grid and on the grid stretched by 4 about 0."""
    near = h.eval_batch(nodes)
    far = h.eval_batch(4.0 * nodes)
    near, far = near[np.isfinite(near)], far[np.isfinite(far)]
    if near.size == 0:
        raise DomainError(f"{h.name} is +inf on the whole grid")
    props = h.properties
    lo1, hi1 = float(near.min()), float(np.abs(near).max())
    lo4 = float(far.min()) if far.size else lo1
    hi4 = float(np.abs(far).max()) if far.size else hi1
    below = props.lower_bound is not None or not lo4 < lo1 - (1.0 + abs(lo1))
    bounded = (props.lower_bound is not None and props.upper_bound is not None) or not hi4 > hi1 + (1.0 + hi1)
    return {"inf": lo1, "sup_abs": hi1, "bounded_below": bool(below), "bounded": bool(bounded)}


def check_infconv_ruusc(
    f: CertifiedFunction,
    g: CertifiedFunction,
    grid: SampleSet,
    route: str,
    region: Optional[Region] = None,
    samples: Optional[SampleSet] = None,
) -> RuUscCertificate:
    """
    Certify f ▽ g relative to the base point of f.

    Args:
        f: Certified relative to u0
        g: Certified relative to 0, with 0 in dom g
        grid: Uniform grid for the min-plus convolution
        route: "both-bounded-below" or "g-bounded"
        region: Region for certifying the result (defaults to the region of f)
        samples: Points of that region

    Raises:
        HypothesisNotMetError: when the route's bound fails on the grid
    """
    if route not in INFCONV_ROUTES:
        raise DomainError(f"Unknown inf-convolution route {route!r}; expected one of {INFCONV_ROUTES}")
    _require_supported("inf_convolution", f=f, g=g)
    zero = np.zeros((1, g.oracle.dim))
    if not np.allclose(g.region.center, 0.0) or not g.oracle.dom_mask(zero)[0]:
        raise DomainError("g must be certified relative to 0, and 0 must lie in dom g")
    nodes = grid.points
    gb = _grid_bounds(g.oracle, nodes)
    if route == "both-bounded-below":
        fb = _grid_bounds(f.oracle, nodes)
        if not (fb["bounded_below"] and gb["bounded_below"]):
            raise HypothesisNotMetError(
                "inf_convolution",
                {"both_bounded_below": f"f bounded below={fb['bounded_below']}, g bounded below={gb['bounded_below']}"},
            )
    elif not gb["bounded"]:
        raise HypothesisNotMetError("inf_convolution", {"g_bounded": f"sampled sup |g| grows past {gb['sup_abs']:.4g}"})

    table = inf_convolution(f, g, grid)
    region = region or f.region
    cert = certify_ru_usc(table, region, None, f.t_schedule, samples or f.samples, f.eps_cert, f.tail)
    logger.info(f"Inf-convolution {table.name} via {route}: {cert.verdict}")
    return cert
