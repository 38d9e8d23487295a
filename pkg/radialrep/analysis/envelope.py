"""
Lower semicontinuous envelopes by shrinking-ball sampling.

The envelope f̄(u) = sup_k inf_{ball(u, r_k)} f is estimated with a fixed
Halton template of the unit ball (center included) scaled to each radius
r_k = r0 * 2^-k. On metric spaces this is also the sequential relaxation,
so a single estimator serves both.
"""

import functools
import logging
import math
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, List, Optional

import numpy as np

from radialrep.analysis.reports import TheoremReport, comparison_rows
from radialrep.analysis.starshape import Region
from radialrep.core.errors import DomainError
from radialrep.core.extreal import gap
from radialrep.core.oracle import FunctionOracle, FunctionProperties, as_points
from radialrep.core.sampling import SampleSet, radius_schedule, unit_ball_points
from radialrep.core.tabulated import TabulatedOracle

logger = logging.getLogger(__name__)

DEFAULT_LSC_TOL = 1e-3


@dataclass(frozen=True)
class EnvelopeParams:
    r0: float = 1.0
    levels: int = 16
    samples_per_shell: int = 64
    seed: int = 0

    def radii(self) -> np.ndarray:
        return radius_schedule(self.r0, self.levels)

    def refined(self, scale: float) -> "EnvelopeParams":
        """More samples per ball and proportionally deeper radii for a resolution `scale`."""
        if scale <= 1:
            return self
        return replace(
            self,
            levels=self.levels + int(round(2 * math.log2(scale))),
            samples_per_shell=int(round(self.samples_per_shell * scale)),
        )


@dataclass
class EnvelopeEstimate:
    point: List[float]
    radii: List[float]
    per_radius_inf: List[float]
    estimate: float
    samples_per_shell: int
    seed: int
    inconclusive: bool = False
    raw_inf: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "point": self.point,
            "estimate": self.estimate,
            "inconclusive": self.inconclusive,
            "radii": self.radii,
            "per_radius_inf": self.per_radius_inf,
        }


@functools.lru_cache(maxsize=32)
def _template(dim: int, count: int, seed: int) -> np.ndarray:
    """Unit-ball Halton points with the origin first; cached read-only."""
    points = np.vstack([np.zeros((1, dim)), unit_ball_points(dim, count, seed)])
    points.setflags(write=False)
    return points


def _shell_estimate(
    f: FunctionOracle,
    u: np.ndarray,
    params: EnvelopeParams,
    region: Optional[Region],
) -> EnvelopeEstimate:
    radii = params.radii()
    template = _template(f.dim, params.samples_per_shell, params.seed)
    m = template.shape[0]
    P = (u + radii[:, None, None] * template[None, :, :]).reshape(-1, f.dim)
    values = f.eval_batch(P).reshape(radii.shape[0], m)
    if region is not None:
        keep = region.contains_mask(P).reshape(radii.shape[0], m)
        values = np.where(keep, values, np.inf)
        inconclusive = not keep[-1].any()
    else:
        inconclusive = False
    raw = values.min(axis=1)
    monotone = np.maximum.accumulate(raw)
    return EnvelopeEstimate(
        point=u.tolist(),
        radii=radii.tolist(),
        per_radius_inf=monotone.tolist(),
        estimate=float(monotone[-1]),
        samples_per_shell=params.samples_per_shell,
        seed=params.seed,
        inconclusive=inconclusive,
        raw_inf=raw.tolist(),
    )


def lsc_envelope(f: FunctionOracle, u: Any, params: Optional[EnvelopeParams] = None) -> EnvelopeEstimate:
    """
    Estimate f̄(u) as the max over k of the sampled inf of f on ball(u, r_k).

    Args:
        f: Oracle
        u: Query point
        params: Radius schedule and template size

    Returns:
        EnvelopeEstimate; the estimate never exceeds f(u)
    """
    u = as_points(u, f.dim)[0]
    return _shell_estimate(f, u, params or EnvelopeParams(), None)


def lsc_envelope_in_D(
    f: FunctionOracle,
    D: Region,
    u: Any,
    params: Optional[EnvelopeParams] = None,
) -> EnvelopeEstimate:
    """
    Estimate liminf_{D ∋ v -> u} f(v), the envelope of f + χ_D at u.

    Points off the closure of D get +inf. When no sample of D falls in the
    smallest ball the estimate carries the inconclusive flag.
    """
    params = params or EnvelopeParams()
    u = as_points(u, f.dim)[0]
    if not D.contains_closure(u):
        radii = params.radii()
        return EnvelopeEstimate(
            point=u.tolist(),
            radii=radii.tolist(),
            per_radius_inf=[math.inf] * radii.shape[0],
            estimate=math.inf,
            samples_per_shell=params.samples_per_shell,
            seed=params.seed,
        )
    estimate = _shell_estimate(f, u, params, D)
    if estimate.inconclusive:
        logger.warning(f"No sample of '{D.name}' in the smallest ball around {u.tolist()}; envelope inconclusive")
    return estimate


def envelope_values(
    f: FunctionOracle,
    U: np.ndarray,
    params: Optional[EnvelopeParams] = None,
    D: Optional[Region] = None,
) -> np.ndarray:
    """Envelope estimates at many points; NaN marks inconclusive points."""
    out = np.empty(U.shape[0])
    for i, u in enumerate(U):
        est = lsc_envelope(f, u, params) if D is None else lsc_envelope_in_D(f, D, u, params)
        out[i] = np.nan if est.inconclusive else est.estimate
    return out


def check_lsc_in_D(
    f: FunctionOracle,
    D: Region,
    interior_samples: SampleSet,
    tol: float = DEFAULT_LSC_TOL,
    params: Optional[EnvelopeParams] = None,
) -> TheoremReport:
    """
    Check that f coincides with the envelope of f + χ_D at sampled points of D.

    Args:
        f: Oracle
        D: Region
        interior_samples: Points of D
        tol: Allowed |envelope - f| (inf = inf counts as 0)
        params: Envelope resolution

    Returns:
        TheoremReport with statement id "lsc_in_D"; the worst row is the witness on failure
    """
    U = interior_samples.points
    outside = ~D.contains_mask(U)
    if outside.any():
        raise DomainError(f"check_lsc_in_D samples must lie in '{D.name}'; {int(outside.sum())} do not")
    fU = f.eval_batch(U)
    env = envelope_values(f, U, params, D)
    gaps = np.where(np.isnan(env), np.inf, gap(env, fU))
    report = TheoremReport(
        statement_id="lsc_in_D",
        rows=comparison_rows(U, env, fU, gaps),
        tolerance=tol,
        metadata={"samples": interior_samples.provenance, "envelope": asdict(params or EnvelopeParams())},
    )
    logger.debug(report.summary())
    return report


def tabulate_envelope(
    f: FunctionOracle,
    grid: SampleSet,
    params: Optional[EnvelopeParams] = None,
) -> TabulatedOracle:
    """The envelope estimate of f at every node of a uniform grid, as a tabulated oracle."""
    if grid.axes is None:
        raise DomainError("tabulate_envelope needs a uniform-grid sample set")
    values = envelope_values(f, grid.points, params)
    values = np.where(np.isnan(values), np.inf, values)
    table = TabulatedOracle(
        name=f"env({f.name})",
        axes=grid.axes,
        values=values,
        properties=FunctionProperties(convex=f.properties.convex, lower_bound=f.properties.lower_bound),
        params={"grid": grid.provenance},
    )
    logger.info(f"Tabulated the envelope of {f.name} on {len(grid)} nodes")
    return table
