"""
Catalog of named functions, regions, integrands and constraint sets.

Every entry is addressable from a problem file as
``{"name": <entry>, "params": {...}}``; composite entries take nested
references in their params. Built objects keep the normalized reference in
their ``ref`` attribute, so the reference is the provenance tree that
rebuilds them.
"""

import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from radialrep.analysis.envelope import EnvelopeParams, tabulate_envelope
from radialrep.analysis.relaxation import ConstraintSet, Integrand, MatrixBall, SEpsilon
from radialrep.analysis.starshape import (
    BallRegion,
    BoxRegion,
    DomainRegion,
    HalfspaceRegion,
    Region,
    ShellRegion,
    SingletonRegion,
    indicator,
    union_of_convex,
)
from radialrep.core.errors import ProblemSpecError, RadialRepError
from radialrep.core.oracle import FunctionOracle, FunctionProperties
from radialrep.core.sampling import make_samples

logger = logging.getLogger(__name__)

Ref = Union[str, Dict[str, Any]]

_FUNCTIONS: Dict[str, Callable[..., FunctionOracle]] = {}
_REGIONS: Dict[str, Callable[..., Region]] = {}
_INTEGRANDS: Dict[str, Callable[..., Integrand]] = {}
_CONSTRAINT_SETS: Dict[str, Callable[..., ConstraintSet]] = {}


def _registrar(table: Dict[str, Callable]) -> Callable[[str], Callable]:
    def register(name: str) -> Callable:
        def decorator(builder: Callable) -> Callable:
            table[name] = builder
            return builder
        return decorator
    return register


register_function = _registrar(_FUNCTIONS)
register_region = _registrar(_REGIONS)
register_integrand = _registrar(_INTEGRANDS)
register_constraint_set = _registrar(_CONSTRAINT_SETS)


def normalize_ref(ref: Ref, path: str) -> Dict[str, Any]:
    if isinstance(ref, str):
        return {"name": ref, "params": {}}
    if not isinstance(ref, dict) or "name" not in ref:
        raise ProblemSpecError(path, f"expected a catalog reference with a 'name', got {ref!r}")
    params = ref.get("params", {})
    if not isinstance(params, dict):
        raise ProblemSpecError(f"{path}.params", "params must be an object")
    return {"name": ref["name"], "params": params}


def _build(table: Dict[str, Callable], kind: str, ref: Ref, path: str) -> Any:
    ref = normalize_ref(ref, path)
    builder = table.get(ref["name"])
    if builder is None:
        raise ProblemSpecError(f"{path}.name", f"unknown {kind} '{ref['name']}' (known: {', '.join(sorted(table))})")
    try:
        built = builder(path, **ref["params"])
    except ProblemSpecError:
        raise
    except TypeError as e:
        raise ProblemSpecError(f"{path}.params", f"bad parameters for {kind} '{ref['name']}': {e}") from e
    except RadialRepError as e:
        raise ProblemSpecError(path, str(e)) from e
    built.ref = ref
    return built


def build_function(ref: Ref, path: str = "function") -> FunctionOracle:
    """
    Build a FunctionOracle from a catalog reference.

    Args:
        ref: Entry name or {"name": ..., "params": {...}}
        path: Field path used in error messages

    Returns:
        The oracle, with `ref` set to the normalized reference
    """
    return _build(_FUNCTIONS, "function", ref, path)


def build_region(ref: Ref, path: str = "region") -> Region:
    return _build(_REGIONS, "region", ref, path)


def build_integrand(ref: Ref, path: str = "integrand") -> Integrand:
    return _build(_INTEGRANDS, "integrand", ref, path)


def build_constraint_set(ref: Ref, path: str = "constraint_set") -> ConstraintSet:
    return _build(_CONSTRAINT_SETS, "constraint set", ref, path)


def list_entries() -> Dict[str, List[str]]:
    return {
        "functions": sorted(_FUNCTIONS),
        "regions": sorted(_REGIONS),
        "integrands": sorted(_INTEGRANDS),
        "constraint_sets": sorted(_CONSTRAINT_SETS),
    }


def _compose_ref(name: str, params: Dict[str, Any], *parts: FunctionOracle) -> Optional[Dict[str, Any]]:
    """Reference of a composition, available when every part came from the catalog."""
    if any(p.ref is None for p in parts):
        return None
    return {"name": name, "params": dict(params, args=[p.ref for p in parts])}


# Combinators shared by the catalog and the calculus in analysis.algebra.

def sum_of(f: FunctionOracle, g: FunctionOracle) -> FunctionOracle:
    """f + g on dom f ∩ dom g."""
    _same_dim(f, g)
    lower = None
    if f.properties.lower_bound is not None and g.properties.lower_bound is not None:
        lower = f.properties.lower_bound + g.properties.lower_bound
    upper = None
    if f.properties.upper_bound is not None and g.properties.upper_bound is not None:
        upper = f.properties.upper_bound + g.properties.upper_bound
    oracle = FunctionOracle(
        name=f"({f.name} + {g.name})",
        dim=f.dim,
        values=lambda X: f.eval_batch(X) + g.eval_batch(X),
        domain=lambda X: f.dom_mask(X) & g.dom_mask(X),
        properties=FunctionProperties(
            convex=f.properties.convex and g.properties.convex,
            continuous=f.properties.continuous and g.properties.continuous,
            lower_bound=lower,
            upper_bound=upper,
        ),
    )
    oracle.ref = _compose_ref("sum", {}, f, g)
    return oracle


def product_of(f: FunctionOracle, g: FunctionOracle) -> FunctionOracle:
    """f * g on dom f ∩ dom g."""
    _same_dim(f, g)
    lower = None
    lf, lg = f.properties.lower_bound, g.properties.lower_bound
    if lf is not None and lg is not None and lf >= 0 and lg >= 0:
        lower = lf * lg
    oracle = FunctionOracle(
        name=f"({f.name} * {g.name})",
        dim=f.dim,
        values=lambda X: f.eval_batch(X) * g.eval_batch(X),
        domain=lambda X: f.dom_mask(X) & g.dom_mask(X),
        properties=FunctionProperties(
            convex=False,
            continuous=f.properties.continuous and g.properties.continuous,
            lower_bound=lower,
        ),
    )
    oracle.ref = _compose_ref("product", {}, f, g)
    return oracle


def scaled_by(f: FunctionOracle, lam: float) -> FunctionOracle:
    """λ f with the domain of f kept (0 * inf = inf)."""
    lam = float(lam)
    props = f.properties
    oracle = FunctionOracle(
        name=f"{lam!r}*{f.name}",
        dim=f.dim,
        values=lambda X: lam * f.eval_batch(X),
        domain=f.dom_mask,
        properties=FunctionProperties(
            convex=props.convex and lam >= 0,
            continuous=props.continuous,
            lower_bound=None if props.lower_bound is None or lam < 0 else lam * props.lower_bound,
            upper_bound=None if props.upper_bound is None or lam < 0 else lam * props.upper_bound,
        ),
    )
    oracle.ref = _compose_ref("scaled", {"factor": lam}, f)
    return oracle


def translated_by(f: FunctionOracle, c: float) -> FunctionOracle:
    c = float(c)
    props = f.properties
    oracle = FunctionOracle(
        name=f"({f.name} + {c!r})",
        dim=f.dim,
        values=lambda X: f.eval_batch(X) + c,
        domain=f.dom_mask,
        properties=FunctionProperties(
            convex=props.convex,
            continuous=props.continuous,
            lower_bound=None if props.lower_bound is None else props.lower_bound + c,
            upper_bound=None if props.upper_bound is None else props.upper_bound + c,
        ),
    )
    oracle.ref = _compose_ref("translated", {"shift": c}, f)
    return oracle


def restricted_to(f: FunctionOracle, region: Region) -> FunctionOracle:
    """f + χ_D."""
    restricted = sum_of(f, indicator(region))
    restricted.name = f"{f.name}|{region.name}"
    restricted.ref = None
    if f.ref is not None and region.ref is not None:
        restricted.ref = {"name": "restricted", "params": {"args": [f.ref], "region": region.ref}}
    return restricted


def _same_dim(f: FunctionOracle, g: FunctionOracle) -> None:
    if f.dim != g.dim:
        raise ProblemSpecError("args", f"cannot combine '{f.name}' (dim {f.dim}) with '{g.name}' (dim {g.dim})")


def _args(path: str, args: Sequence[Ref], count: int) -> List[FunctionOracle]:
    if not isinstance(args, (list, tuple)) or len(args) != count:
        raise ProblemSpecError(f"{path}.params.args", f"expected {count} nested function references")
    return [build_function(a, f"{path}.params.args[{i}]") for i, a in enumerate(args)]


def _norm(X: np.ndarray) -> np.ndarray:
    return np.linalg.norm(X, axis=1)


# -- functions ---------------------------------------------------------------

@register_function("norm_power")
def _norm_power(path: str, dim: int = 2, p: float = 2.0, scale: float = 1.0) -> FunctionOracle:
    return FunctionOracle(
        name=f"{scale!r}*|u|^{p!r}" if scale != 1.0 else f"|u|^{p!r}",
        dim=int(dim),
        values=lambda X: scale * np.power(_norm(X), p),
        properties=FunctionProperties(
            convex=p >= 1 and scale >= 0,
            continuous=p > 0,
            lower_bound=0.0 if scale >= 0 else None,
        ),
        params={"p": p, "scale": scale},
    )


@register_function("affine")
def _affine(path: str, coeffs: Sequence[float] = (1.0,), offset: float = 0.0) -> FunctionOracle:
    a = np.asarray(coeffs, dtype=float).reshape(-1)
    return FunctionOracle(
        name="affine",
        dim=a.shape[0],
        values=lambda X: X @ a + offset,
        properties=FunctionProperties(
            convex=True,
            continuous=True,
            lower_bound=float(offset) if not a.any() else None,
            upper_bound=float(offset) if not a.any() else None,
        ),
        params={"coeffs": a.tolist(), "offset": offset},
    )


@register_function("quadratic")
def _quadratic(
    path: str,
    Q: Sequence[Sequence[float]] = ((1.0, 0.0), (0.0, 1.0)),
    b: Optional[Sequence[float]] = None,
    c: float = 0.0,
) -> FunctionOracle:
    """u'Qu + b'u + c."""
    Qm = np.atleast_2d(np.asarray(Q, dtype=float))
    Qm = 0.5 * (Qm + Qm.T)
    bv = np.zeros(Qm.shape[0]) if b is None else np.asarray(b, dtype=float).reshape(-1)
    if bv.shape[0] != Qm.shape[0]:
        raise ProblemSpecError(f"{path}.params.b", f"expected {Qm.shape[0]} entries")
    eig = np.linalg.eigvalsh(Qm)
    lower = None
    if eig.min() > 0:
        lower = float(c - 0.25 * bv @ np.linalg.solve(Qm, bv))
    return FunctionOracle(
        name="quadratic",
        dim=Qm.shape[0],
        values=lambda X: np.einsum("ni,ij,nj->n", X, Qm, X) + X @ bv + c,
        properties=FunctionProperties(convex=bool(eig.min() >= -1e-12), continuous=True, lower_bound=lower),
        params={"Q": Qm.tolist(), "b": bv.tolist(), "c": c},
    )


@register_function("cubic_coupling")
def _cubic_coupling(path: str) -> FunctionOracle:
    """x^2 + y^2 + x*y^3: continuous and nonconvex."""
    return FunctionOracle(
        name="x^2+y^2+x*y^3",
        dim=2,
        values=lambda X: X[:, 0] ** 2 + X[:, 1] ** 2 + X[:, 0] * X[:, 1] ** 3,
        properties=FunctionProperties(convex=False, continuous=True),
    )


@register_function("barrier")
def _barrier(path: str, dim: int = 2, radius: float = 1.0) -> FunctionOracle:
    """1 / (1 - |u|/r) on the open ball of radius r."""
    return FunctionOracle(
        name="barrier",
        dim=int(dim),
        values=lambda X: 1.0 / (1.0 - _norm(X) / radius),
        domain=lambda X: _norm(X) < radius,
        properties=FunctionProperties(convex=True, continuous=True, lower_bound=1.0),
        params={"radius": radius},
    )


@register_function("constant")
def _constant(path: str, dim: int = 1, value: float = 0.0) -> FunctionOracle:
    value = float(value)
    return FunctionOracle(
        name=f"const({value!r})",
        dim=int(dim),
        values=lambda X: np.full(X.shape[0], value),
        properties=FunctionProperties(convex=True, continuous=True, lower_bound=value, upper_bound=value),
        params={"value": value},
    )


@register_function("indicator")
def _indicator(path: str, region: Ref = "box") -> FunctionOracle:
    return indicator(build_region(region, f"{path}.params.region"))


@register_function("step")
def _step(path: str, dim: int = 1, threshold: float = 0.0, left: float = 1.0, right: float = 0.0) -> FunctionOracle:
    """`left` where u_0 <= threshold, `right` beyond."""
    return FunctionOracle(
        name="step",
        dim=int(dim),
        values=lambda X: np.where(X[:, 0] <= threshold, left, right),
        properties=FunctionProperties(
            convex=False,
            continuous=left == right,
            lower_bound=float(min(left, right)),
            upper_bound=float(max(left, right)),
        ),
        params={"threshold": threshold, "left": left, "right": right},
    )


@register_function("spike")
def _spike(path: str, at: Sequence[float] = (0.0,), height: float = 1.0, base: float = 0.0) -> FunctionOracle:
    """`height` at the single point `at`, `base` everywhere else."""
    point = np.asarray(at, dtype=float).reshape(-1)
    return FunctionOracle(
        name="spike",
        dim=point.shape[0],
        values=lambda X: np.where(np.all(X == point, axis=1), height, base),
        properties=FunctionProperties(
            convex=False,
            continuous=height == base,
            lower_bound=float(min(height, base)),
            upper_bound=float(max(height, base)),
        ),
        params={"at": point.tolist(), "height": height, "base": base},
    )


@register_function("radial_oscillation")
def _radial_oscillation(path: str, dim: int = 2, radius: float = 1.0, amplitude: float = 1.0) -> FunctionOracle:
    """amplitude * sin(1 / (1 - |u|/r)) on the open ball: no radial limit at the sphere."""
    return FunctionOracle(
        name="radial_oscillation",
        dim=int(dim),
        values=lambda X: amplitude * np.sin(1.0 / (1.0 - _norm(X) / radius)),
        domain=lambda X: _norm(X) < radius,
        properties=FunctionProperties(
            convex=False,
            continuous=True,
            lower_bound=-abs(amplitude),
            upper_bound=abs(amplitude),
        ),
        params={"radius": radius, "amplitude": amplitude},
    )


@register_function("sum")
def _sum(path: str, args: Sequence[Ref] = ()) -> FunctionOracle:
    f, g = _args(path, args, 2)
    return sum_of(f, g)


@register_function("product")
def _product(path: str, args: Sequence[Ref] = ()) -> FunctionOracle:
    f, g = _args(path, args, 2)
    return product_of(f, g)


@register_function("scaled")
def _scaled(path: str, factor: float = 1.0, args: Sequence[Ref] = ()) -> FunctionOracle:
    (f,) = _args(path, args, 1)
    return scaled_by(f, factor)


@register_function("translated")
def _translated(path: str, shift: float = 0.0, args: Sequence[Ref] = ()) -> FunctionOracle:
    (f,) = _args(path, args, 1)
    return translated_by(f, shift)


@register_function("restricted")
def _restricted(path: str, region: Ref = "box", args: Sequence[Ref] = ()) -> FunctionOracle:
    (f,) = _args(path, args, 1)
    return restricted_to(f, build_region(region, f"{path}.params.region"))


@register_function("envelope_table")
def _envelope_table(
    path: str,
    grid: Optional[Dict[str, Any]] = None,
    envelope: Optional[Dict[str, Any]] = None,
    args: Sequence[Ref] = (),
) -> FunctionOracle:
    """The lsc envelope of the nested function tabulated on a uniform grid."""
    (f,) = _args(path, args, 1)
    if grid is None:
        raise ProblemSpecError(f"{path}.params.grid", "envelope_table needs a uniform-grid descriptor")
    samples = make_samples(dict(grid, kind="uniform-grid"))
    return tabulate_envelope(f, samples, EnvelopeParams(**(envelope or {})))


# -- regions -----------------------------------------------------------------

@register_region("box")
def _box(
    path: str,
    lo: Sequence[float] = (0.0,),
    hi: Sequence[float] = (1.0,),
    lower_closed: Union[bool, Sequence[bool]] = True,
    upper_closed: Union[bool, Sequence[bool]] = True,
    center: Optional[Sequence[float]] = None,
) -> Region:
    return BoxRegion(lo, hi, lower_closed, upper_closed, center=center, name="box")


@register_region("interval")
def _interval(
    path: str,
    lo: float = 0.0,
    hi: float = 1.0,
    lower_closed: bool = True,
    upper_closed: bool = True,
    center: Optional[float] = None,
) -> Region:
    return BoxRegion(
        [lo], [hi], lower_closed, upper_closed,
        center=None if center is None else [center],
        name=f"{'[' if lower_closed else ']'}{lo!r},{hi!r}{']' if upper_closed else '['}",
    )


@register_region("ball")
def _ball(
    path: str,
    center_point: Sequence[float] = (0.0, 0.0),
    radius: float = 1.0,
    open: bool = False,
    center: Optional[Sequence[float]] = None,
) -> Region:
    return BallRegion(center_point, radius, open=open, center=center, name="open_ball" if open else "ball")


@register_region("halfspaces")
def _halfspaces(
    path: str,
    A: Sequence[Sequence[float]] = (),
    b: Sequence[float] = (),
    center: Sequence[float] = (),
    strict: bool = False,
) -> Region:
    return HalfspaceRegion(A, b, center, strict=strict)


@register_region("union_of_convex")
def _union(path: str, first: Ref = "box", second: Ref = "box", center: Sequence[float] = ()) -> Region:
    D1 = build_region(first, f"{path}.params.first")
    D2 = build_region(second, f"{path}.params.second")
    return union_of_convex(D1, D2, center)


@register_region("shell")
def _shell(
    path: str,
    center_point: Sequence[float] = (0.0, 0.0),
    inner: float = 1.0,
    outer: float = 1.0,
    center: Optional[Sequence[float]] = None,
) -> Region:
    return ShellRegion(center_point, inner, outer, center=center, name="sphere" if inner == outer else "shell")


@register_region("singleton")
def _singleton(path: str, point: Sequence[float] = (0.0,)) -> Region:
    return SingletonRegion(point)


@register_region("domain_of")
def _domain_of(
    path: str,
    function: Ref = "barrier",
    center: Sequence[float] = (),
    bounds: Sequence[Sequence[float]] = (),
    convex: bool = False,
) -> Region:
    f = build_function(function, f"{path}.params.function")
    return DomainRegion(f, center, bounds, declared_convex=convex)


# -- integrands and constraint sets -------------------------------------------

@register_integrand("frobenius_power")
def _frobenius_power(
    path: str,
    power: float = 2.0,
    p: Optional[float] = None,
    c: float = 1.0,
    C: float = 1.0,
    C_prime: Optional[float] = None,
    shape: Sequence[int] = (2, 2),
) -> Integrand:
    """|ξ|^power; the declared growth exponent p defaults to the actual power."""
    power = float(power)
    return Integrand(
        name=f"|xi|^{power!r}",
        L=lambda Xi: np.power(np.linalg.norm(Xi.reshape(Xi.shape[0], -1), axis=1), power),
        p=power if p is None else float(p),
        c=c,
        C=C,
        C_prime=(1.0 if power == 2.0 else power) if C_prime is None else C_prime,
        convex=power >= 1.0,
        shape=tuple(shape),
    )


@register_integrand("shifted_frobenius")
def _shifted_frobenius(
    path: str,
    shift: float = 1.0,
    c: float = 1.0,
    C: float = 2.0,
    C_prime: float = 1.0,
    shape: Sequence[int] = (2, 2),
) -> Integrand:
    return Integrand(
        name=f"|xi|^2+{shift!r}",
        L=lambda Xi: np.sum(Xi.reshape(Xi.shape[0], -1) ** 2, axis=1) + shift,
        p=2.0,
        c=c,
        C=C,
        C_prime=C_prime,
        convex=True,
        shape=tuple(shape),
    )


@register_integrand("negative_frobenius")
def _negative_frobenius(
    path: str,
    c: float = 1.0,
    C: float = 1.0,
    C_prime: float = 1.0,
    shape: Sequence[int] = (2, 2),
) -> Integrand:
    return Integrand(
        name="-|xi|^2",
        L=lambda Xi: -np.sum(Xi.reshape(Xi.shape[0], -1) ** 2, axis=1),
        p=2.0,
        c=c,
        C=C,
        C_prime=C_prime,
        convex=False,
        shape=tuple(shape),
    )


@register_constraint_set("s_epsilon")
def _s_epsilon(path: str, eps: float = 1.0) -> ConstraintSet:
    return SEpsilon(eps)


@register_constraint_set("matrix_ball")
def _matrix_ball(path: str, radius: float = 1.0, shape: Sequence[int] = (2, 2), open: bool = False) -> ConstraintSet:
    return MatrixBall(radius, shape=tuple(int(s) for s in shape), open=open)
