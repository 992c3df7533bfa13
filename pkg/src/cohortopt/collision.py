"""Collision-driven hybrid engine.

Keeps the cohort selection machinery (pseudo-objectives, follow
probabilities, roulette selection) but replaces interval reduction with a
physics-style position update: the cohort is split into a better,
stationary half and a worse, moving half; paired bodies exchange
momentum-like velocities weighted by their selection probabilities
(masses) and a coefficient of restitution that decays linearly over the
run, shifting the search from exploration to exploitation. No sampling
reduction factor exists anywhere in this engine.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cohort import (
    Candidate,
    RunResult,
    TraceRecord,
    _Incumbent,
    _score_point,
    _uniform_position,
    check_saturation,
    run_saturated,
    incumbent_key,
    roulette_select,
    selection_probabilities,
)
from .penalty import PenaltyConfig
from .problem import (
    EvalCounter,
    ProblemDefinition,
    RandomSource,
    Vector,
    clip_to_bounds,
    make_rng,
)


class Role(enum.Enum):
    STATIONARY = "stationary"
    MOVING = "moving"


@dataclass(frozen=True)
class BodyRole:
    role: Role
    partner_index: int


class CorSchedule(enum.Enum):
    LINEAR_DECAY = "linear_decay"


@dataclass(frozen=True)
class CollisionState:
    """One attempt's collision quantities over the rank-sorted cohort.

    Stationary bodies (first half) always have zero velocity before the
    collision. A pair whose masses are both zero (both behaviors
    infinitely bad) exchanges nothing: its post-collision velocities are
    zero vectors.
    """

    masses: np.ndarray
    velocities_before: tuple
    velocities_after: tuple
    epsilon: float


@dataclass(frozen=True)
class CboConfig:
    cohort_size: int = 6
    cor_schedule: CorSchedule = CorSchedule.LINEAR_DECAY
    max_learning_attempts: int = 2000
    max_function_evaluations: int = 30000
    saturation_window: int = 20
    saturation_tolerance: float = 1e-6
    penalty: PenaltyConfig = field(default_factory=PenaltyConfig)
    seed: int = 0

    def __post_init__(self):
        if self.cohort_size < 2 or self.cohort_size % 2 != 0:
            raise ValueError("cohort_size must be an even integer >= 2")
        if self.max_learning_attempts < 1 or self.max_function_evaluations < 1:
            raise ValueError("budgets must be positive")
        if self.saturation_window < 2:
            raise ValueError("saturation_window must be at least 2")
        if self.saturation_tolerance < 0.0:
            raise ValueError("saturation_tolerance must be non-negative")
        if not isinstance(self.cor_schedule, CorSchedule):
            raise ValueError("unknown restitution schedule")


def assign_roles(cohort: Sequence[Candidate]) -> list[BodyRole]:
    """Split the cohort into halves by rank: better half stationary.

    Candidates are ranked ascending under the incumbent ordering (stable,
    so ties keep input order). The moving candidate at sorted position
    C/2 + k pairs with the stationary one at sorted position k. Returned
    roles align with the input order; partner_index refers to input
    indices.
    """
    n = len(cohort)
    if n < 2 or n % 2 != 0:
        raise ValueError("cohort size must be even and >= 2")
    order = sorted(range(n), key=lambda i: incumbent_key(cohort[i].evaluation,
                                                         cohort[i].phi))
    half = n // 2
    roles: list[BodyRole] = [None] * n  # type: ignore[list-item]
    for rank in range(half):
        stat_idx = order[rank]
        mov_idx = order[rank + half]
        roles[stat_idx] = BodyRole(Role.STATIONARY, partner_index=mov_idx)
        roles[mov_idx] = BodyRole(Role.MOVING, partner_index=stat_idx)
    return roles


def masses(probs: Sequence[float]) -> np.ndarray:
    """Body masses are the selection probabilities: better is heavier."""
    return np.asarray(probs, dtype=float).copy()


def velocity_before(moving_position: Vector, partner_position: Vector) -> Vector:
    """Pre-collision velocity of a moving body: offset from its partner.
    Stationary bodies have zero velocity before collision."""
    return moving_position - partner_position


def velocity_after_moving(m_mov: float, m_stat: float, velocity: Vector,
                          eps: float) -> Vector:
    """Post-collision velocity of a moving body:
    (m_mov - eps * m_stat) / (m_mov + m_stat) times its own velocity."""
    if m_mov + m_stat <= 0.0:
        raise ValueError("mass sum must be positive")
    return (m_mov - eps * m_stat) / (m_mov + m_stat) * velocity


def velocity_after_stationary(m_mov: float, m_stat: float,
                              partner_velocity: Vector, eps: float) -> Vector:
    """Post-collision velocity of a stationary body:
    m_mov * (1 + eps) / (m_stat + m_mov) times the partner's velocity."""
    if m_mov + m_stat <= 0.0:
        raise ValueError("mass sum must be positive")
    return m_mov * (1.0 + eps) / (m_stat + m_mov) * partner_velocity


def cor_epsilon(attempt: int, max_attempts: int) -> float:
    """Linearly decaying coefficient of restitution, 1 at the first
    attempt down to 0 at the attempt budget."""
    if max_attempts < 1:
        raise ValueError("max_attempts must be positive")
    if not 0 <= attempt <= max_attempts:
        raise ValueError("attempt must lie in [0, max_attempts]")
    return 1.0 - attempt / max_attempts


def collision_state(ranked: Sequence[Candidate], ranked_masses: np.ndarray,
                    eps: float) -> CollisionState:
    """Velocities before and after collision for a rank-sorted cohort."""
    c = len(ranked)
    half = c // 2
    dim = ranked[0].position.shape[0]
    zero = np.zeros(dim)
    before = [zero] * half
    before += [velocity_before(ranked[i].position, ranked[i - half].position)
               for i in range(half, c)]
    after = []
    for i in range(c):
        if i < half:
            m_mov, m_stat = ranked_masses[i + half], ranked_masses[i]
            v = before[i + half]
            compute = velocity_after_stationary
        else:
            m_mov, m_stat = ranked_masses[i], ranked_masses[i - half]
            v = before[i]
            compute = velocity_after_moving
        if m_mov + m_stat <= 0.0:
            after.append(zero)
        else:
            after.append(compute(m_mov, m_stat, v, eps))
    return CollisionState(masses=ranked_masses, velocities_before=tuple(before),
                          velocities_after=tuple(after), epsilon=eps)


def update_positions(cohort: Sequence[Candidate], roles: Sequence[BodyRole],
                     velocities_after: Sequence[Vector],
                     problem: ProblemDefinition,
                     rng: RandomSource) -> list[Vector]:
    """New positions from post-collision velocities, clipped to bounds.

    Each body draws a fresh uniform [-1, 1] vector, one component per
    dimension, in cohort order. A stationary body moves from its own
    position; a moving body relocates relative to its partner's old
    position.
    """
    new_positions = []
    for i, cand in enumerate(cohort):
        rand = rng.uniform(-1.0, 1.0, problem.dimension)
        if roles[i].role is Role.STATIONARY:
            base = cand.position
        else:
            base = cohort[roles[i].partner_index].position
        new_positions.append(clip_to_bounds(base + rand * velocities_after[i],
                                            problem.bounds, problem.kinds))
    return new_positions


def ci_sapf_cbo_run(problem: ProblemDefinition, cfg: CboConfig) -> RunResult:
    """Full hybrid run; costs C * (1 + attempts) function evaluations.

    Per attempt the random stream is consumed in a fixed order: C roulette
    draws (each candidate selects a behavior to follow; the collision
    formulas themselves drive the position updates), then C uniform
    [-1, 1] vectors in sorted order, stationary bodies first.
    """
    rng = make_rng(cfg.seed)
    counter = EvalCounter()
    started = time.perf_counter()
    c = cfg.cohort_size
    half = c // 2

    cohort: list[Candidate] = []
    for _ in range(c):
        x = _uniform_position(problem, problem.bounds.lower, problem.bounds.upper, rng)
        ev, phi = _score_point(problem, x, cfg.penalty, counter)
        cohort.append(Candidate(position=x,
                                interval_lower=problem.bounds.lower.copy(),
                                interval_upper=problem.bounds.upper.copy(),
                                evaluation=ev, phi=phi))

    best = _Incumbent()
    for cand in cohort:
        best.offer(cand)

    trace: list[TraceRecord] = []
    attempts = 0
    while (attempts < cfg.max_learning_attempts
           and counter.count + c <= cfg.max_function_evaluations):
        probs = selection_probabilities([cand.phi for cand in cohort])
        for _ in range(c):
            roulette_select(probs, rng.random())

        order = sorted(range(c), key=lambda i: incumbent_key(cohort[i].evaluation,
                                                             cohort[i].phi))
        ranked = [cohort[i] for i in order]
        ranked_masses = masses(probs[order])
        roles = assign_roles(ranked)

        eps = cor_epsilon(attempts, cfg.max_learning_attempts)
        state = collision_state(ranked, ranked_masses, eps)
        new_positions = update_positions(ranked, roles, state.velocities_after,
                                         problem, rng)
        new_cohort = []
        for i, x in enumerate(new_positions):
            ev, phi = _score_point(problem, x, cfg.penalty, counter)
            new_cohort.append(Candidate(position=x,
                                        interval_lower=ranked[i].interval_lower,
                                        interval_upper=ranked[i].interval_upper,
                                        evaluation=ev, phi=phi))
        cohort = new_cohort
        attempts += 1
        for cand in cohort:
            best.offer(cand)
        trace.append(TraceRecord(attempt=attempts, best_phi=best.phi,
                                 best_f=best.evaluation.objective,
                                 best_violation=best.evaluation.violation))
        if run_saturated(cohort, trace, cfg.saturation_window,
                         cfg.saturation_tolerance):
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
