"""Command line experiment driver.

Subcommands: ``list`` prints registry metadata as JSON, ``run`` solves one
problem over N seeded runs, ``suite`` does the same for every registered
problem (optionally one category). A TOML or JSON config file may supply
any flag value; explicit command line flags win over file values. Exit
code 0 covers honest infeasible outcomes; nonzero means an actual error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

try:
    import tomllib  # py >= 3.11
except ImportError:
    tomllib = None

from .bench import Algorithm, ExperimentConfig, emit_report, run_experiment
from .cohort import CiConfig
from .collision import CboConfig
from .penalty import NegativeMode, PenaltyConfig
from .problem import Category
from . import suite

_SOLVER_KEYS = ("runs", "seed", "candidates", "reduction_factor", "variations",
                "max_fe", "max_attempts", "negative_mode",
                "near_zero_threshold", "int_offset", "infinity_substitute",
                "saturation_window", "saturation_tolerance")


def _parse_flat_toml(text: str, path: str) -> dict:
    """Minimal flat key = value TOML reader for Python 3.10 (no tomllib).

    Supports strings, booleans, ints and floats at the top level, which is
    all a solver config needs. Tables are rejected.
    """
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            raise ValueError(f"{path}:{lineno}: tables are not supported; "
                             "use flat keys (or a JSON config)")
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.split("#", 1)[0].strip()
        if value.startswith(('"', "'")) and value.endswith(value[0]) and len(value) >= 2:
            out[key] = value[1:-1]
        elif value in ("true", "false"):
            out[key] = value == "true"
        else:
            try:
                out[key] = int(value)
            except ValueError:
                try:
                    out[key] = float(value)
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: cannot parse value {value!r}")
    return out


def load_config_file(path: str | Path) -> dict:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError(f"{path}: config must be a JSON object")
        return data
    if tomllib is not None:
        return tomllib.loads(text)
    return _parse_flat_toml(text, str(path))


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--runs", type=int, help="independent runs per problem (default 30)")
    parser.add_argument("--seed", type=int, help="base seed; run i uses seed + i (default 0)")
    parser.add_argument("--candidates", type=int,
                        help="cohort size (default 5 for ci-sapf, 6 for ci-sapf-cbo)")
    parser.add_argument("--reduction-factor", type=float, dest="reduction_factor",
                        help="sampling interval reduction factor, ci-sapf only (default 0.95)")
    parser.add_argument("--variations", type=int,
                        help="resamples per candidate per attempt, ci-sapf only (default 1)")
    parser.add_argument("--max-fe", type=int, dest="max_fe",
                        help="function evaluation budget per run (default 30000)")
    parser.add_argument("--max-attempts", type=int, dest="max_attempts",
                        help="learning attempt budget per run (default 2000)")
    parser.add_argument("--negative-mode", choices=["literal", "shift"],
                        dest="negative_mode",
                        help="pseudo-objective treatment of negative objectives")
    parser.add_argument("--near-zero-threshold", type=float, dest="near_zero_threshold",
                        help="objective magnitude below which the offset penalty applies")
    parser.add_argument("--int-offset", type=float, dest="int_offset",
                        help="offset added to near-zero objectives in the penalty product")
    parser.add_argument("--infinity-substitute", type=float, dest="infinity_substitute",
                        help="stand-in objective value for infinite objectives")
    parser.add_argument("--saturation-window", type=int, dest="saturation_window",
                        help="attempts without improvement before stopping (default 20)")
    parser.add_argument("--saturation-tolerance", type=float, dest="saturation_tolerance",
                        help="phi range counted as no improvement (default 1e-6)")
    parser.add_argument("--config", help="TOML or JSON file supplying any of these keys")
    parser.add_argument("--out", required=True, help="report output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohortopt",
        description="Constrained-optimization experiments with cohort solvers")
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="print registered problem metadata as JSON")
    p_list.add_argument("--category", choices=[c.value for c in Category])
    p_list.add_argument("--descriptors",
                        help="JSON problem-descriptor file to include (metadata only)")

    p_run = sub.add_parser("run", help="run one problem")
    p_run.add_argument("--algo", choices=[a.value for a in Algorithm])
    p_run.add_argument("--problem", help="suite id, e.g. RC20")
    _add_solver_flags(p_run)

    p_suite = sub.add_parser("suite", help="run every registered problem")
    p_suite.add_argument("--algo", choices=[a.value for a in Algorithm])
    p_suite.add_argument("--category", choices=[c.value for c in Category])
    _add_solver_flags(p_suite)

    return parser


def _merged_options(args: argparse.Namespace, keys) -> dict:
    """File values first, explicit CLI flags override them."""
    merged: dict = {}
    if getattr(args, "config", None):
        file_values = load_config_file(args.config)
        unknown = set(file_values) - set(keys)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        merged.update(file_values)
    for key in keys:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _build_solver(algorithm: Algorithm, opts: dict):
    penalty = PenaltyConfig(
        near_zero_threshold=opts.get("near_zero_threshold", 1.0),
        int_offset=opts.get("int_offset", 1.0),
        infinity_substitute=opts.get("infinity_substitute", 1.0),
        negative_mode=NegativeMode(opts.get("negative_mode", "literal")))
    common = dict(
        max_learning_attempts=opts.get("max_attempts", 2000),
        max_function_evaluations=opts.get("max_fe", 30000),
        saturation_window=opts.get("saturation_window", 20),
        saturation_tolerance=opts.get("saturation_tolerance", 1e-6),
        penalty=penalty)
    if algorithm is Algorithm.CI_SAPF:
        return CiConfig(cohort_size=opts.get("candidates", 5),
                        reduction_factor=opts.get("reduction_factor", 0.95),
                        variations_per_attempt=opts.get("variations", 1),
                        **common)
    return CboConfig(cohort_size=opts.get("candidates", 6), **common)


def _cmd_list(args: argparse.Namespace) -> int:
    category = Category(args.category) if args.category else None
    records = [rec.metadata() for rec in suite.list_problems(category)]
    for rec in records:
        rec["runnable"] = True
    if args.descriptors:
        records.extend(suite.load_descriptor_file(args.descriptors))
    print(json.dumps(records, indent=2))
    return 0


def _run_problems(args: argparse.Namespace, problem_ids: list[str]) -> int:
    opts = _merged_options(args, _SOLVER_KEYS + ("algo", "problem", "out", "category"))
    algo_name = opts.get("algo")
    if not algo_name:
        raise ValueError("--algo is required (flag or config file)")
    algorithm = Algorithm(algo_name)
    solver = _build_solver(algorithm, opts)
    cfg = ExperimentConfig(algorithm=algorithm,
                           problem_ids=tuple(problem_ids),
                           solver=solver,
                           runs=opts.get("runs", 30),
                           base_seed=opts.get("seed", 0),
                           output_dir=Path(opts["out"]))
    outcomes = run_experiment(cfg)
    files = emit_report(outcomes, cfg.output_dir)
    for outcome in outcomes:
        s = outcome.statistics
        shown = "infeasible" if s.best is None else f"best={s.best:.10g}"
        print(f"{s.problem_id} [{s.algorithm}] runs={s.runs} fr={s.fr:.4g}% "
              f"{shown} mcv={s.mcv:.4g} avg_fe={s.avg_fe:.6g}")
    print(f"wrote {len(files)} files to {cfg.output_dir}")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    opts = _merged_options(args, _SOLVER_KEYS + ("algo", "problem", "out"))
    pid = opts.get("problem")
    if not pid:
        raise ValueError("--problem is required (flag or config file)")
    return _run_problems(args, [pid])


def _cmd_suite(args: argparse.Namespace) -> int:
    category = Category(args.category) if getattr(args, "category", None) else None
    records = suite.list_problems(category)
    if not records:
        raise ValueError("no registered problems match the category filter")
    return _run_problems(args, [r.suite_id for r in records])


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"list": _cmd_list, "run": _cmd_run, "suite": _cmd_suite}
    try:
        return handlers[args.command](args)
    except (ValueError, KeyError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
