"""Batch experiment driver: seeded multi-run experiments, summary
statistics and machine-readable reports.

Each problem is solved ``runs`` times with per-run seeds ``base_seed + i``
so a rerun with the same configuration reproduces every number exactly.
Objective statistics follow the feasible-only convention: best, median,
mean, worst and the population standard deviation are taken over the runs
whose final incumbent is feasible. The mean constraint violation (mcv)
averages the final incumbent's violation over all runs, so a 100 percent
feasibility rate is equivalent to mcv == 0.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .cohort import CiConfig, RunResult, ci_sapf_run
from .collision import CboConfig, ci_sapf_cbo_run
from .problem import ProblemDefinition
from . import suite

SolverConfig = Union[CiConfig, CboConfig]

SUMMARY_NOTE = ("# objective statistics (best/median/mean/worst/std) are over "
                "feasible runs only; mcv is the mean of each run's final "
                "incumbent constraint violation over all runs")

_COLUMNS = ("problem", "algorithm", "runs", "feasible_runs", "fr", "best",
            "median", "mean", "worst", "std", "mcv", "avg_fe", "avg_time",
            "violation_best", "violation_mean", "violation_worst")


class Algorithm(enum.Enum):
    CI_SAPF = "ci-sapf"
    CI_SAPF_CBO = "ci-sapf-cbo"


@dataclass(frozen=True)
class ExperimentConfig:
    algorithm: Algorithm
    problem_ids: tuple[str, ...]
    solver: SolverConfig
    runs: int = 30
    base_seed: int = 0
    output_dir: Optional[Path] = None

    def __post_init__(self):
        object.__setattr__(self, "problem_ids", tuple(self.problem_ids))
        if not self.problem_ids:
            raise ValueError("problem_ids must not be empty")
        if self.runs < 1:
            raise ValueError("runs must be positive")
        if self.algorithm is Algorithm.CI_SAPF and not isinstance(self.solver, CiConfig):
            raise ValueError("ci-sapf needs a CiConfig")
        if self.algorithm is Algorithm.CI_SAPF_CBO and not isinstance(self.solver, CboConfig):
            raise ValueError("ci-sapf-cbo needs a CboConfig")


@dataclass(frozen=True)
class RunRecord:
    run: int
    seed: int
    objective: float
    violation: float
    feasible: bool
    function_evaluations: int
    learning_attempts: int
    wall_time: float


@dataclass
class RunStatistics:
    problem_id: str
    algorithm: str
    runs: int
    feasible_runs: int
    fr: float
    best: Optional[float]
    median: Optional[float]
    mean: Optional[float]
    worst: Optional[float]
    std: Optional[float]
    mcv: float
    avg_fe: float
    avg_time: float
    violation_best: float
    violation_mean: float
    violation_worst: float
    per_run: list[RunRecord] = field(default_factory=list)


@dataclass
class ExperimentOutcome:
    problem_id: str
    algorithm: Algorithm
    statistics: RunStatistics
    results: list[RunResult]


def solve_once(problem: ProblemDefinition, algorithm: Algorithm,
               solver: SolverConfig, seed: int) -> RunResult:
    cfg = replace(solver, seed=seed)
    if algorithm is Algorithm.CI_SAPF:
        return ci_sapf_run(problem, cfg)
    return ci_sapf_cbo_run(problem, cfg)


def compute_statistics(results: Sequence[RunResult], problem_id: str,
                       algorithm: str, base_seed: int = 0) -> RunStatistics:
    """Aggregate a batch of runs into one summary row.

    With zero feasible runs the objective fields are None (reported as
    "infeasible") and only the violation statistics carry information.
    """
    if not results:
        raise ValueError("need at least one run result")
    feasible = [r for r in results if r.feasible]
    violations = np.array([r.best_violation for r in results])

    if feasible:
        objectives = np.array([r.best_objective for r in feasible])
        best = float(objectives.min())
        median = float(np.median(objectives))
        mean = float(objectives.mean())
        worst = float(objectives.max())
        std = float(objectives.std())          # population std
    else:
        best = median = mean = worst = std = None

    per_run = [RunRecord(run=i, seed=base_seed + i,
                         objective=r.best_objective,
                         violation=r.best_violation, feasible=r.feasible,
                         function_evaluations=r.function_evaluations,
                         learning_attempts=r.learning_attempts,
                         wall_time=r.wall_time)
               for i, r in enumerate(results)]

    return RunStatistics(
        problem_id=problem_id, algorithm=algorithm, runs=len(results),
        feasible_runs=len(feasible),
        fr=100.0 * len(feasible) / len(results),
        best=best, median=median, mean=mean, worst=worst, std=std,
        mcv=float(violations.mean()),
        avg_fe=float(np.mean([r.function_evaluations for r in results])),
        avg_time=float(np.mean([r.wall_time for r in results])),
        violation_best=float(violations.min()),
        violation_mean=float(violations.mean()),
        violation_worst=float(violations.max()),
        per_run=per_run)


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentOutcome]:
    """Run every configured problem ``cfg.runs`` times and aggregate.

    Runs are independent (seed base_seed + i each), so executing them in
    any order or in parallel cannot change the numbers; this driver runs
    them sequentially.
    """
    outcomes = []
    for pid in cfg.problem_ids:
        problem = suite.get_problem(pid)
        results = [solve_once(problem, cfg.algorithm, cfg.solver,
                              cfg.base_seed + i)
                   for i in range(cfg.runs)]
        stats = compute_statistics(results, pid, cfg.algorithm.value,
                                   cfg.base_seed)
        outcomes.append(ExperimentOutcome(problem_id=pid,
                                          algorithm=cfg.algorithm,
                                          statistics=stats, results=results))
    return outcomes


def _fmt(value) -> str:
    if value is None:
        return "infeasible"
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def _stats_row(s: RunStatistics) -> dict:
    return {
        "problem": s.problem_id, "algorithm": s.algorithm, "runs": s.runs,
        "feasible_runs": s.feasible_runs, "fr": s.fr, "best": s.best,
        "median": s.median, "mean": s.mean, "worst": s.worst, "std": s.std,
        "mcv": s.mcv, "avg_fe": s.avg_fe, "avg_time": s.avg_time,
        "violation_best": s.violation_best, "violation_mean": s.violation_mean,
        "violation_worst": s.violation_worst,
    }


def emit_report(outcomes: Sequence[ExperimentOutcome],
                out_dir: str | Path) -> list[Path]:
    """Write summary.csv, summary.json and one trace CSV per run.

    File bodies contain no timestamps, so a rerun with the same
    configuration produces byte-identical output. All numbers are
    serialized with 10 significant digits.
    """
    if not outcomes:
        raise ValueError("no experiment outcomes to report")
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise RuntimeError(f"cannot create report directory {out_dir}: {exc}") from exc

    written = []
    ordered = sorted(outcomes, key=lambda o: (o.problem_id, o.algorithm.value))

    csv_path = out_dir / "summary.csv"
    lines = [SUMMARY_NOTE, ",".join(_COLUMNS)]
    for outcome in ordered:
        row = _stats_row(outcome.statistics)
        lines.append(",".join(_fmt(row[col]) for col in _COLUMNS))
    _write_text(csv_path, "\n".join(lines) + "\n")
    written.append(csv_path)

    json_path = out_dir / "summary.json"
    payload = {
        "note": SUMMARY_NOTE.lstrip("# "),
        "problems": [
            {**{k: (v if not isinstance(v, float) else float(_fmt(v)))
                for k, v in _stats_row(o.statistics).items()},
             "per_run": [
                 {"run": r.run, "seed": r.seed,
                  "objective": float(_fmt(r.objective)),
                  "violation": float(_fmt(r.violation)),
                  "feasible": r.feasible,
                  "function_evaluations": r.function_evaluations,
                  "learning_attempts": r.learning_attempts,
                  "wall_time": float(_fmt(r.wall_time))}
                 for r in o.statistics.per_run]}
            for o in ordered],
    }
    _write_text(json_path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    written.append(json_path)

    for outcome in ordered:
        for run_index, result in enumerate(outcome.results):
            trace_path = out_dir / f"trace_{outcome.problem_id}_{run_index}.csv"
            rows = ["attempt,best_phi,best_f,best_violation"]
            rows.extend(
                f"{rec.attempt},{_fmt(rec.best_phi)},{_fmt(rec.best_f)},"
                f"{_fmt(rec.best_violation)}"
                for rec in result.trace)
            _write_text(trace_path, "\n".join(rows) + "\n")
            written.append(trace_path)
    return written


def _write_text(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise RuntimeError(f"cannot write report file {path}: {exc}") from exc
