"""
Radial uniform modulus and ru-usc certification.

For a > 0, u0 in D and t in [0, 1] the modulus is

    Δ(t) = sup_{u in D} (f(t u + (1 - t) u0) - f(u)) / (a + |f(u)|)

and f is ru-usc in D relative to u0 when limsup_{t -> 1} Δ(t) <= 0 for
some a. Here the sup runs over a deterministic sample set plus a short
coordinate search around each maximizer, so every estimate is a lower
bound of the true sup.
"""

import csv
import io
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from radialrep.analysis.starshape import Region
from radialrep.core.errors import DomainError, HypothesisNotMetError
from radialrep.core.extreal import format_value
from radialrep.core.oracle import FunctionOracle, evaluate
from radialrep.core.sampling import SampleSet, geometric_t_schedule, validate_t_schedule

logger = logging.getLogger(__name__)

SUPPORTED = "ru-usc-supported"
INCONCLUSIVE = "inconclusive"
REFUTED = "refuted"

DEFAULT_EPS_CERT = 1e-6
DEFAULT_TAIL = 5
CONVEX_SLACK = 1e-12


def certification_schedule(k_max: int = 40) -> np.ndarray:
    return geometric_t_schedule(k_max)


@dataclass
class ModulusProfile:
    """Sampled modulus over a t-schedule for one constant a."""

    a: float
    t_schedule: List[float]
    delta_estimates: List[float]
    argmax_points: List[List[float]]
    sample_count: int
    seed: Optional[int] = None
    star_violations: List[Tuple[float, List[float]]] = field(default_factory=list)

    def tail(self, length: int) -> List[float]:
        return self.delta_estimates[-length:]

    def tail_limsup(self, length: int) -> float:
        return float(max(self.tail(length)))

    def to_csv(self) -> str:
        dim = len(self.argmax_points[0]) if self.argmax_points else 0
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["t", "delta_estimate"] + [f"argmax_{i}" for i in range(dim)])
        for t, delta, point in zip(self.t_schedule, self.delta_estimates, self.argmax_points):
            writer.writerow([format_value(t), format_value(delta)] + [format_value(x) for x in point])
        return buffer.getvalue()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": self.a,
            "t_schedule": self.t_schedule,
            "delta_estimates": self.delta_estimates,
            "argmax_points": self.argmax_points,
            "sample_count": self.sample_count,
            "seed": self.seed,
            "star_violations": len(self.star_violations),
        }


@dataclass
class RuUscCertificate:
    """
    Verdict of a sampled ru-usc certification.

    A refuted certificate always carries a witness (t, u, a, ratio) that
    `replay_witness` recomputes exactly.
    """

    verdict: str
    a_used: Optional[float]
    limsup_estimate: float
    tail_length: int
    tolerance: float
    profiles: List[ModulusProfile] = field(default_factory=list)
    witness: Optional[Dict[str, Any]] = None
    sample_count: int = 0
    seed: Optional[int] = None

    @property
    def supported(self) -> bool:
        return self.verdict == SUPPORTED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "a_used": self.a_used,
            "limsup_estimate": self.limsup_estimate,
            "tail_length": self.tail_length,
            "tolerance": self.tolerance,
            "witness": self.witness,
            "sample_count": self.sample_count,
            "seed": self.seed,
            "per_a": [{"a": p.a, "tail_limsup": p.tail_limsup(self.tail_length)} for p in self.profiles],
        }


def _check_samples(f: FunctionOracle, D: Region, U: np.ndarray) -> np.ndarray:
    """Values of f at the D-samples; raises unless every sample lies in D ∩ dom f."""
    if U.shape[0] == 0:
        raise DomainError(f"Empty sample set for region '{D.name}'")
    outside = ~D.contains_mask(U)
    if outside.any():
        raise DomainError(f"{int(outside.sum())} samples are outside '{D.name}', first at {U[np.argmax(outside)].tolist()}")
    fU = f.eval_batch(U)
    off_dom = ~np.isfinite(fU)
    if off_dom.any():
        raise DomainError(
            f"D is not inside dom {f.name}: f is +inf at the sample {U[np.argmax(off_dom)].tolist()}"
        )
    return fU


def ratios(f: FunctionOracle, U: np.ndarray, fU: np.ndarray, u0: np.ndarray, a: float, t: float) -> np.ndarray:
    """(f(t u + (1 - t) u0) - f(u)) / (a + |f(u)|) per sample; +inf where the segment leaves dom f."""
    fP = f.eval_batch(t * U + (1.0 - t) * u0)
    out = np.full(U.shape[0], np.inf)
    finite = np.isfinite(fP)
    out[finite] = (fP[finite] - fU[finite]) / (a + np.abs(fU[finite]))
    return out


def _initial_step(U: np.ndarray) -> float:
    extent = float(np.max(np.ptp(U, axis=0))) if U.shape[0] > 1 else 0.0
    return 0.5 * extent / max(U.shape[0] ** (1.0 / U.shape[1]), 1.0)


def _refine(
    f: FunctionOracle,
    D: Region,
    u_best: np.ndarray,
    best: float,
    a: float,
    t: float,
    step: float,
    rounds: int,
) -> Tuple[float, np.ndarray, bool]:
    """Coordinate search around the maximizer; returns (ratio, point, hit_violation)."""
    dim = u_best.shape[0]
    moves = np.vstack([np.eye(dim), -np.eye(dim)])
    for _ in range(rounds):
        if step <= 0:
            break
        improved = True
        walks = 0
        while improved and walks < 50:
            improved = False
            walks += 1
            cand = u_best + step * moves
            keep = D.contains_mask(cand)
            if not keep.any():
                break
            cand = cand[keep]
            fC = f.eval_batch(cand)
            finite = np.isfinite(fC)
            if not finite.any():
                break
            cand, fC = cand[finite], fC[finite]
            r = ratios(f, cand, fC, D.center, a, t)
            if np.isinf(r).any():
                j = int(np.argmax(np.isinf(r)))
                return np.inf, cand[j], True
            j = int(np.argmax(r))
            if r[j] > best:
                best, u_best, improved = float(r[j]), cand[j], True
        step *= 0.5
    return best, u_best, False


def modulus_profile(
    f: FunctionOracle,
    D: Region,
    a: float,
    t_schedule: Optional[Sequence[float]] = None,
    D_samples: Optional[SampleSet] = None,
    refine: bool = True,
    refine_rounds: int = 3,
) -> ModulusProfile:
    """
    Sampled modulus Δ^a_{f,D,u0}(t) with u0 = D.center.

    Args:
        f: Oracle with D inside its domain
        D: Region
        a: Positive constant
        t_schedule: Values in [0, 1]; defaults to 1 - 2^-k, k = 1..40
        D_samples: Points of D (defaults to 256 interior points)
        refine: Run the coordinate search around each maximizer
        refine_rounds: Rounds of step halving

    Returns:
        ModulusProfile; an estimate is +inf where a segment leaves dom f
    """
    if not a > 0:
        raise DomainError(f"The constant a must be positive, got {a}")
    ts = validate_t_schedule(certification_schedule() if t_schedule is None else t_schedule)
    samples = D_samples if D_samples is not None else D.sample_interiorish(256, seed=0)
    U = samples.points
    fU = _check_samples(f, D, U)
    u0 = D.center
    step0 = _initial_step(U) if refine else 0.0

    estimates: List[float] = []
    argmaxes: List[List[float]] = []
    violations: List[Tuple[float, List[float]]] = []
    for t in ts:
        r = ratios(f, U, fU, u0, a, float(t))
        inf_rows = np.isinf(r)
        if inf_rows.any():
            for u in U[inf_rows]:
                violations.append((float(t), u.tolist()))
            estimates.append(np.inf)
            argmaxes.append(U[np.argmax(inf_rows)].tolist())
            continue
        j = int(np.argmax(r))
        best, u_best = float(r[j]), U[j]
        if refine and step0 > 0:
            best, u_best, hit = _refine(f, D, u_best, best, a, float(t), step0, refine_rounds)
            if hit:
                violations.append((float(t), u_best.tolist()))
        estimates.append(best)
        argmaxes.append(np.asarray(u_best).tolist())

    if violations:
        logger.warning(f"Modulus of {f.name} on '{D.name}': {len(violations)} segments leave dom f")
    return ModulusProfile(
        a=float(a),
        t_schedule=[float(t) for t in ts],
        delta_estimates=estimates,
        argmax_points=argmaxes,
        sample_count=int(U.shape[0]),
        seed=samples.seed,
        star_violations=violations,
    )


def default_a_candidates(f: FunctionOracle, D: Region) -> List[float]:
    """{1, 1 + |f(u0)|, 10, 100} without duplicates, in that order."""
    f0 = evaluate(f, D.center)
    if not f0.is_finite:
        raise DomainError(f"u0 = {D.center.tolist()} is outside dom {f.name}")
    candidates: List[float] = []
    for a in (1.0, 1.0 + abs(f0.value), 10.0, 100.0):
        if a not in candidates:
            candidates.append(a)
    return candidates


def refined_samples(D: Region, samples: SampleSet) -> SampleSet:
    """The sample set plus twice as many fresh interior points under the next seed."""
    seed = (samples.seed or 0) + 1
    return samples.concat(D.sample_interiorish(2 * len(samples), seed=seed))


def certify_ru_usc(
    f: FunctionOracle,
    D: Region,
    a_candidates: Optional[Sequence[float]] = None,
    t_schedule: Optional[Sequence[float]] = None,
    D_samples: Optional[SampleSet] = None,
    eps_cert: float = DEFAULT_EPS_CERT,
    tail: int = DEFAULT_TAIL,
    refine: bool = True,
) -> RuUscCertificate:
    """
    Certify, refute or give up on ru-usc of f in D relative to D.center.

    Args:
        f: Oracle
        D: Region with u0 = D.center
        a_candidates: Constants to try in order (defaults to default_a_candidates)
        t_schedule: Schedule whose tail witnesses the limsup
        D_samples: Points of D
        eps_cert: Threshold on the tail limsup
        tail: Number of trailing schedule entries used for the limsup

    Returns:
        RuUscCertificate with the first supporting a, or refuted/inconclusive
    """
    if a_candidates is not None and len(a_candidates) == 0:
        raise DomainError("certify_ru_usc needs at least one candidate for a")
    candidates = list(a_candidates) if a_candidates is not None else default_a_candidates(f, D)
    samples = D_samples if D_samples is not None else D.sample_interiorish(256, seed=0)
    ts = certification_schedule() if t_schedule is None else t_schedule

    profiles = []
    for a in candidates:
        profile = modulus_profile(f, D, a, ts, samples, refine=refine)
        profiles.append(profile)
        limsup = profile.tail_limsup(tail)
        logger.debug(f"certify {f.name} on '{D.name}': a={a} tail limsup {limsup:.3e}")
        if limsup <= eps_cert:
            logger.info(f"{f.name} is ru-usc-supported on '{D.name}' with a={a}")
            return RuUscCertificate(
                verdict=SUPPORTED,
                a_used=float(a),
                limsup_estimate=limsup,
                tail_length=tail,
                tolerance=eps_cert,
                profiles=profiles,
                sample_count=len(samples),
                seed=samples.seed,
            )

    best_limsup = min(p.tail_limsup(tail) for p in profiles)
    persistent = all(min(p.tail(tail)) > eps_cert for p in profiles)
    if persistent:
        finer = refined_samples(D, samples)
        finer_profiles = [modulus_profile(f, D, a, ts, finer, refine=refine) for a in candidates]
        persistent = all(min(p.tail(tail)) > eps_cert for p in finer_profiles)

    if persistent:
        last = profiles[-1]
        k = len(last.delta_estimates) - tail + int(np.argmax(last.tail(tail)))
        witness = {
            "t": last.t_schedule[k],
            "u": last.argmax_points[k],
            "a": last.a,
            "ratio": last.delta_estimates[k],
        }
        logger.info(f"{f.name} refuted on '{D.name}': witness {witness}")
        return RuUscCertificate(
            verdict=REFUTED,
            a_used=None,
            limsup_estimate=best_limsup,
            tail_length=tail,
            tolerance=eps_cert,
            profiles=profiles,
            witness=witness,
            sample_count=len(samples),
            seed=samples.seed,
        )

    logger.warning(f"ru-usc of {f.name} on '{D.name}' is inconclusive (best tail limsup {best_limsup:.3e})")
    return RuUscCertificate(
        verdict=INCONCLUSIVE,
        a_used=None,
        limsup_estimate=best_limsup,
        tail_length=tail,
        tolerance=eps_cert,
        profiles=profiles,
        sample_count=len(samples),
        seed=samples.seed,
    )


def replay_witness(f: FunctionOracle, D: Region, witness: Dict[str, Any]) -> float:
    """Recompute the ratio stored in a refutation witness."""
    u = np.asarray(witness["u"], dtype=float).reshape(1, -1)
    fU = f.eval_batch(u)
    return float(ratios(f, u, fU, D.center, float(witness["a"]), float(witness["t"]))[0])


@dataclass
class ConvexBoundResult:
    """Outcome of the convex-case bound Δ(t) <= 1 - t with a = 1 + |f(u0)|."""

    passed: bool
    a: float
    max_excess: float
    witness: Optional[Dict[str, Any]] = None

    def __bool__(self) -> bool:
        return self.passed


def convex_bound_check(
    f: FunctionOracle,
    D: Region,
    t_schedule: Optional[Sequence[float]] = None,
    D_samples: Optional[SampleSet] = None,
) -> ConvexBoundResult:
    """
    Check every sampled ratio against (1 - t) + 1e-12.

    Args:
        f: Oracle declared convex
        D: Region inside dom f
        t_schedule: Defaults to 1 - 2^-k, k = 1..20
        D_samples: Points of D

    Returns:
        ConvexBoundResult, truthy iff no sampled ratio exceeds the bound
    """
    if not f.properties.convex:
        raise HypothesisNotMetError("convex_bound_check", {"convex": f"{f.name} is not declared convex"})
    ts = validate_t_schedule(geometric_t_schedule(20) if t_schedule is None else t_schedule)
    samples = D_samples if D_samples is not None else D.sample_interiorish(1000, seed=0)
    U = samples.points
    fU = _check_samples(f, D, U)
    f0 = f.eval_batch(D.center.reshape(1, -1))[0]
    a = 1.0 + abs(float(f0))

    worst = -np.inf
    witness = None
    for t in ts:
        r = ratios(f, U, fU, D.center, a, float(t))
        excess = r - ((1.0 - t) + CONVEX_SLACK)
        j = int(np.argmax(excess))
        if excess[j] > worst:
            worst = float(excess[j])
            witness = {"t": float(t), "u": U[j].tolist(), "a": a, "ratio": float(r[j])}
    passed = worst <= 0.0
    if not passed:
        logger.info(f"Convex bound violated for {f.name}: {witness}")
    return ConvexBoundResult(passed=passed, a=a, max_excess=worst, witness=None if passed else witness)
