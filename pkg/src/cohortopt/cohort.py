"""Cohort search engine with interval-reduction sampling.

Each of C candidates keeps a per-variable sampling interval. Every
learning attempt: selection probabilities are computed from the current
pseudo-objectives, each candidate roulette-selects a peer to follow,
contracts its own interval by the reduction factor around the followed
peer's position, resamples inside it and adopts the best resample
unconditionally. The run stops on saturation of the incumbent trace or
when a budget is exhausted.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .penalty import PenaltyConfig, score
from .problem import (
    EvalCounter,
    Evaluation,
    ProblemDefinition,
    RandomSource,
    Vector,
    clip_to_bounds,
    evaluate,
    make_rng,
)


@dataclass
class Candidate:
    """A cohort member: position, sampling interval, evaluation, phi."""

    position: Vector
    interval_lower: Vector
    interval_upper: Vector
    evaluation: Evaluation
    phi: float


@dataclass(frozen=True)
class CiConfig:
    cohort_size: int = 5
    reduction_factor: float = 0.95
    variations_per_attempt: int = 1
    max_learning_attempts: int = 2000
    max_function_evaluations: int = 30000
    saturation_window: int = 20
    saturation_tolerance: float = 1e-6
    restart_on_saturation: bool = False
    penalty: PenaltyConfig = field(default_factory=PenaltyConfig)
    seed: int = 0

    def __post_init__(self):
        if self.cohort_size < 2:
            raise ValueError("cohort_size must be at least 2")
        if not 0.0 < self.reduction_factor < 1.0:
            raise ValueError("reduction_factor must lie strictly in (0, 1)")
        if self.variations_per_attempt < 1:
            raise ValueError("variations_per_attempt must be positive")
        if self.max_learning_attempts < 1 or self.max_function_evaluations < 1:
            raise ValueError("budgets must be positive")
        if self.saturation_window < 2:
            raise ValueError("saturation_window must be at least 2")
        if self.saturation_tolerance < 0.0:
            raise ValueError("saturation_tolerance must be non-negative")


@dataclass(frozen=True)
class TraceRecord:
    attempt: int
    best_phi: float
    best_f: float
    best_violation: float


@dataclass
class RunResult:
    best_position: Vector
    best_objective: float
    best_phi: float
    best_violation: float
    feasible: bool
    function_evaluations: int
    learning_attempts: int
    wall_time: float
    trace: list[TraceRecord]


def incumbent_key(evaluation: Evaluation, phi: float):
    """Ordering for the run incumbent: feasible beats infeasible, then
    lower objective among feasible, lower violation among infeasible,
    ties broken by lower phi."""
    if evaluation.feasible:
        return (0, evaluation.objective, phi)
    return (1, evaluation.violation, phi)


def selection_probabilities(phis: Sequence[float]) -> np.ndarray:
    """Follow probabilities proportional to 1/phi, lower phi more likely.

    Non-positive phis are first shifted by -min(phi) + delta with
    delta = 1e-9 * max(1, |min(phi)|) so the inversion stays defined.
    """
    phis = np.asarray(phis, dtype=float)
    if phis.size == 0:
        raise ValueError("need at least one pseudo-objective")
    low = phis.min()
    if low <= 0.0:
        phis = phis + (-low + 1e-9 * max(1.0, abs(low)))
    with np.errstate(divide="ignore", over="ignore"):
        inv = 1.0 / phis
    if np.isinf(inv).any():
        # 1/phi overflowed: those phis are indistinguishable from the
        # limit, so all weight concentrates on them
        mask = np.isinf(inv)
        return mask / mask.sum()
    total = inv.sum()
    if total == 0.0:
        # every behavior infinitely bad: follow uniformly
        return np.full(phis.shape, 1.0 / phis.size)
    return inv / total


def roulette_select(probs: Sequence[float], u: float) -> int:
    """First index whose cumulative probability strictly exceeds u."""
    acc = 0.0
    for i, p in enumerate(probs):
        acc += p
        if acc > u:
            return i
    return len(probs) - 1


def shrink_interval(followed_value: float, current_width: float, r: float,
                    lower: float, upper: float) -> tuple[float, float]:
    """Contract a sampling interval to width*r around the followed value,
    intersected with the variable's bounds."""
    half = 0.5 * current_width * r
    return max(lower, followed_value - half), min(upper, followed_value + half)


def _score_point(problem: ProblemDefinition, x: Vector, penalty: PenaltyConfig,
                 counter: EvalCounter) -> tuple[Evaluation, float]:
    ev = evaluate(problem, x, counter)
    return ev, score(ev.objective, ev.violation, penalty).phi


def _uniform_position(problem: ProblemDefinition, lo: Vector, hi: Vector,
                      rng: RandomSource) -> Vector:
    x = lo + rng.random(problem.dimension) * (hi - lo)
    return clip_to_bounds(x, problem.bounds, problem.kinds)


def initialize_cohort(problem: ProblemDefinition, cfg: CiConfig,
                      rng: RandomSource, counter: EvalCounter) -> list[Candidate]:
    """C candidates sampled uniformly in the bounds, intervals spanning the
    full bounds, all evaluated (C function evaluations)."""
    cohort = []
    for _ in range(cfg.cohort_size):
        x = _uniform_position(problem, problem.bounds.lower, problem.bounds.upper, rng)
        ev, phi = _score_point(problem, x, cfg.penalty, counter)
        cohort.append(Candidate(position=x,
                                interval_lower=problem.bounds.lower.copy(),
                                interval_upper=problem.bounds.upper.copy(),
                                evaluation=ev, phi=phi))
    return cohort


def learning_attempt(cohort: list[Candidate], problem: ProblemDefinition,
                     cfg: CiConfig, rng: RandomSource,
                     counter: EvalCounter) -> list[Candidate]:
    """One full cohort iteration; costs exactly C * t evaluations.

    Probabilities and followed positions are snapshotted at attempt start.
    Per candidate the random stream is consumed in a fixed order: one
    roulette draw, then one D-vector per variation.
    """
    probs = selection_probabilities([c.phi for c in cohort])
    followed_positions = [c.position for c in cohort]

    new_cohort = []
    for cand in cohort:
        target = followed_positions[roulette_select(probs, rng.random())]
        lo = np.empty(problem.dimension)
        hi = np.empty(problem.dimension)
        for i in range(problem.dimension):
            lo[i], hi[i] = shrink_interval(
                target[i],
                cand.interval_upper[i] - cand.interval_lower[i],
                cfg.reduction_factor,
                problem.bounds.lower[i], problem.bounds.upper[i])

        best_x = None
        best_ev = None
        best_phi = np.inf
        for _ in range(cfg.variations_per_attempt):
            x = _uniform_position(problem, lo, hi, rng)
            ev, phi = _score_point(problem, x, cfg.penalty, counter)
            if best_x is None or phi < best_phi:
                best_x, best_ev, best_phi = x, ev, phi
        # unconditional adoption: the new behavior replaces the old one
        new_cohort.append(Candidate(position=best_x, interval_lower=lo,
                                    interval_upper=hi, evaluation=best_ev,
                                    phi=best_phi))
    return new_cohort


def check_saturation(trace: Sequence[TraceRecord], window: int, tol: float) -> bool:
    """True iff the last ``window`` incumbent phis span a range <= tol."""
    if window < 2:
        raise ValueError("window must be at least 2")
    if len(trace) < window:
        return False
    phis = [rec.best_phi for rec in trace[-window:]]
    return max(phis) - min(phis) <= tol


def cohort_spread(cohort: Sequence[Candidate]) -> float:
    """Range of the cohort's current pseudo-objectives."""
    phis = [c.phi for c in cohort]
    return max(phis) - min(phis)


def run_saturated(cohort: Sequence[Candidate], trace: Sequence[TraceRecord],
                  window: int, tol: float) -> bool:
    """Stopping rule: the incumbent has stalled over the window AND the
    candidates' behaviors have become almost the same. Requiring cohort
    consensus too keeps a momentary stall of the best-so-far from ending a
    run whose candidates are still spread out and learning."""
    return (check_saturation(trace, window, tol)
            and cohort_spread(cohort) <= tol)


class _Incumbent:
    """Tracks the best candidate ever observed under incumbent_key."""

    def __init__(self):
        self.key = None
        self.position: Optional[Vector] = None
        self.evaluation: Optional[Evaluation] = None
        self.phi = np.inf

    def offer(self, candidate: Candidate) -> None:
        key = incumbent_key(candidate.evaluation, candidate.phi)
        if self.key is None or key < self.key:
            self.key = key
            self.position = candidate.position.copy()
            self.evaluation = candidate.evaluation
            self.phi = candidate.phi


def ci_sapf_run(problem: ProblemDefinition, cfg: CiConfig) -> RunResult:
    """Full run: initialize, iterate learning attempts, stop on saturation
    or budget, return the incumbent with its per-attempt trace.

    An all-infeasible outcome is not an error; the result simply carries
    feasible=False and the smallest violation found.
    """
    rng = make_rng(cfg.seed)
    counter = EvalCounter()
    started = time.perf_counter()

    cohort = initialize_cohort(problem, cfg, rng, counter)
    best = _Incumbent()
    for cand in cohort:
        best.offer(cand)

    trace: list[TraceRecord] = []
    attempts = 0
    restart_mark = 0
    per_attempt = cfg.cohort_size * cfg.variations_per_attempt
    while (attempts < cfg.max_learning_attempts
           and counter.count + per_attempt <= cfg.max_function_evaluations):
        cohort = learning_attempt(cohort, problem, cfg, rng, counter)
        attempts += 1
        for cand in cohort:
            best.offer(cand)
        trace.append(TraceRecord(attempt=attempts, best_phi=best.phi,
                                 best_f=best.evaluation.objective,
                                 best_violation=best.evaluation.violation))
        if run_saturated(cohort, trace[restart_mark:], cfg.saturation_window,
                         cfg.saturation_tolerance):
            if (cfg.restart_on_saturation
                    and counter.count + cfg.cohort_size + per_attempt
                    <= cfg.max_function_evaluations):
                cohort = initialize_cohort(problem, cfg, rng, counter)
                for cand in cohort:
                    best.offer(cand)
                restart_mark = len(trace)
                continue
            break

    return RunResult(best_position=best.position,
                     best_objective=best.evaluation.objective,
                     best_phi=best.phi,
                     best_violation=best.evaluation.violation,
                     feasible=best.evaluation.feasible,
                     function_evaluations=counter.count,
                     learning_attempts=attempts,
                     wall_time=time.perf_counter() - started,
                     trace=trace)
