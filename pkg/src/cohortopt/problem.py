"""Constrained problem model.

A problem is ``minimize f(x)`` subject to inequality constraints
``g_i(x) <= 0``, equality constraints ``h_j(x) = 0`` and box bounds.
Equalities are relaxed to ``|h_j(x)| - eps <= 0`` with a small tolerance
(1e-4 by default), so a point is feasible exactly when its aggregate
violation is zero.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

Vector = np.ndarray
ObjectiveFn = Callable[[Vector], float]
ConstraintFn = Callable[[Vector], float]

#: Deterministic random stream: same seed, same draws. One instance per run.
RandomSource = np.random.Generator


class DimensionMismatchError(ValueError):
    """Input vector length does not match the problem dimension."""


class EvaluationFaultError(RuntimeError):
    """An objective or constraint evaluator returned NaN.

    Infinities are not faults: they are passed through and neutralized by
    the penalty layer's infinity guard.
    """


class VarKind(enum.Enum):
    CONTINUOUS = "continuous"
    INTEGER = "integer"


class Category(enum.Enum):
    """The six benchmark suite domains."""

    INDUSTRIAL_CHEMICAL = "industrial_chemical"
    PROCESS_SYNTHESIS = "process_synthesis"
    MECHANICAL = "mechanical"
    POWER_SYSTEM = "power_system"
    POWER_ELECTRONICS = "power_electronics"
    LIVESTOCK = "livestock"


@dataclass(frozen=True)
class Bounds:
    """Per-dimension box ``lower[i] <= x[i] <= upper[i]``."""

    lower: Vector
    upper: Vector

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float)
        hi = np.asarray(self.upper, dtype=float)
        if lo.ndim != 1 or lo.shape != hi.shape:
            raise ValueError("lower and upper must be 1-D arrays of equal length")
        if not (np.isfinite(lo).all() and np.isfinite(hi).all()):
            raise ValueError("bounds must be finite")
        if (lo > hi).any():
            raise ValueError("lower bound exceeds upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    def __len__(self) -> int:
        return self.lower.shape[0]

    @property
    def width(self) -> Vector:
        return self.upper - self.lower

    def contains(self, x: Vector) -> bool:
        return bool((x >= self.lower).all() and (x <= self.upper).all())


@dataclass(frozen=True)
class ConstraintEvaluation:
    g_values: tuple[float, ...]
    h_values: tuple[float, ...]


@dataclass(frozen=True)
class Evaluation:
    """Outcome of one objective/constraint evaluation at a point."""

    objective: float
    constraints: ConstraintEvaluation
    violation: float
    feasible: bool


@dataclass
class EvalCounter:
    """Mutable function-evaluation counter owned by a single run."""

    count: int = 0


@dataclass(frozen=True)
class ProblemDefinition:
    id: str
    name: str
    dimension: int
    bounds: Bounds
    kinds: tuple[VarKind, ...]
    objective_fn: ObjectiveFn
    inequality_fns: tuple[ConstraintFn, ...] = ()
    equality_fns: tuple[ConstraintFn, ...] = ()
    equality_tolerance: float = 1e-4
    best_known: Optional[float] = None
    category: Category = Category.MECHANICAL

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if len(self.bounds) != self.dimension:
            raise ValueError("bounds length must equal dimension")
        if len(self.kinds) != self.dimension:
            raise ValueError("kinds length must equal dimension")
        if self.equality_tolerance <= 0.0:
            raise ValueError("equality_tolerance must be positive")
        for i, kind in enumerate(self.kinds):
            if kind is VarKind.INTEGER:
                lo = self.bounds.lower[i]
                hi = self.bounds.upper[i]
                if lo != round(lo) or hi != round(hi):
                    raise ValueError(f"integer dimension {i} needs integral bounds")
        object.__setattr__(self, "inequality_fns", tuple(self.inequality_fns))
        object.__setattr__(self, "equality_fns", tuple(self.equality_fns))


def make_rng(seed: int) -> RandomSource:
    """Deterministic generator; equal seeds yield equal streams."""
    return np.random.Generator(np.random.PCG64(seed))


def equality_violation(h: float, eps: float) -> float:
    """Violation of a relaxed equality: ``max(0, |h| - eps)``."""
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    return max(0.0, abs(h) - eps)


def total_violation(constraints: ConstraintEvaluation, eps: float) -> float:
    """Aggregate violation: positive parts of g plus relaxed-equality terms.

    Only violated constraints contribute; satisfied ones add exactly zero,
    so the result is 0 iff the point is feasible.
    """
    total = 0.0
    for g in constraints.g_values:
        if g > 0.0:
            total += g
    for h in constraints.h_values:
        total += equality_violation(h, eps)
    return total


def round_integers(x: Vector, kinds: Sequence[VarKind]) -> Vector:
    """Round integer dimensions to the nearest integral value."""
    out = np.array(x, dtype=float)
    for i, kind in enumerate(kinds):
        if kind is VarKind.INTEGER:
            out[i] = np.rint(out[i])
    return out


def clip_to_bounds(x: Vector, bounds: Bounds, kinds: Sequence[VarKind]) -> Vector:
    """Clamp into the box and round integer dimensions.

    Idempotent; integer dimensions stay in-bounds because their bounds are
    integral by construction.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[0] != len(bounds):
        raise DimensionMismatchError(
            f"vector has length {x.shape[0]}, bounds have length {len(bounds)}")
    out = np.clip(x, bounds.lower, bounds.upper)
    return round_integers(out, kinds)


def evaluate(problem: ProblemDefinition, x: Vector,
             counter: Optional[EvalCounter] = None) -> Evaluation:
    """Evaluate objective and all constraints at ``x``.

    Integer dimensions are rounded before the evaluators run, so callers
    may hand in continuous samples. NaN from any evaluator raises
    :class:`EvaluationFaultError`; infinities pass through untouched.
    Counts as exactly one function evaluation.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != problem.dimension:
        raise DimensionMismatchError(
            f"problem {problem.id!r} has dimension {problem.dimension}, "
            f"got vector of shape {x.shape}")
    x = round_integers(x, problem.kinds)

    f = float(problem.objective_fn(x))
    if math.isnan(f):
        raise EvaluationFaultError(f"objective of {problem.id!r} returned NaN at {x.tolist()}")

    g_values = []
    for i, fn in enumerate(problem.inequality_fns):
        g = float(fn(x))
        if math.isnan(g):
            raise EvaluationFaultError(
                f"inequality constraint {i} of {problem.id!r} returned NaN at {x.tolist()}")
        g_values.append(g)
    h_values = []
    for j, fn in enumerate(problem.equality_fns):
        h = float(fn(x))
        if math.isnan(h):
            raise EvaluationFaultError(
                f"equality constraint {j} of {problem.id!r} returned NaN at {x.tolist()}")
        h_values.append(h)

    constraints = ConstraintEvaluation(tuple(g_values), tuple(h_values))
    violation = total_violation(constraints, problem.equality_tolerance)
    if counter is not None:
        counter.count += 1
    return Evaluation(objective=f, constraints=constraints,
                      violation=violation, feasible=violation == 0.0)
