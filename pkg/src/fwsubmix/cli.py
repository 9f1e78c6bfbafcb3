"""Command-line interface.

Subcommands::

    fwsubmix run <config> [overrides]   # run a benchmark experiment
    fwsubmix verify <instance>          # gradient/structure checks on an instance file
    fwsubmix oracle <instance> --step s # brute-force grid maximizer

Exit codes: 0 success, 2 configuration or parse error, 3 solver or
verification failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

import numpy as np

from .errors import ConfigurationError, FwsubmixError, ParseError
from .experiments import (
    BenchmarkResult,
    CustomResult,
    InterpolationResult,
    _parse_seeds,
    load_config,
    run_experiment,
)
from .objectives import QuadraticObjective
from .serialize import load_instance
from .verify import (
    check_concave,
    check_dr_submodular,
    gradient_rel_error,
    grid_maximize,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fwsubmix")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a benchmark experiment from a config file")
    run.add_argument("config")
    run.add_argument("--n", type=int)
    run.add_argument("--m", type=int)
    run.add_argument("--seed", help="comma list (0,1,2) or half-open range (0:50)")
    run.add_argument("--algo", help="comma-separated solver names")
    run.add_argument("--iterations", type=int)
    run.add_argument("--lambda", dest="lam", type=float)
    run.add_argument("--sigma", type=float)
    run.add_argument("--budget", type=float)
    run.add_argument("--step", type=float)
    run.add_argument("--workers", type=int)
    run.add_argument("--out", help="output directory")

    ver = sub.add_parser("verify", help="run verification checks on an instance file")
    ver.add_argument("instance")
    ver.add_argument("--trials", type=int, default=100)

    oracle = sub.add_parser("oracle", help="grid-maximize an instance file")
    oracle.add_argument("instance")
    oracle.add_argument("--step", type=float, required=True)
    oracle.add_argument("--lambda", dest="lam", type=float, default=None)
    return parser


def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    overrides = {}
    if args.n is not None:
        overrides["n"] = args.n
    if args.m is not None:
        overrides["m"] = args.m
    if args.seed is not None:
        overrides["seeds"] = _parse_seeds(args.seed)
    if args.algo is not None:
        overrides["algorithms"] = tuple(t.strip() for t in args.algo.split(",") if t.strip())
    if args.iterations is not None:
        overrides["iterations"] = args.iterations
    if args.lam is not None:
        overrides["lam"] = args.lam
    if args.sigma is not None:
        overrides["sigma"] = args.sigma
    if args.budget is not None:
        overrides["budget"] = args.budget
    if args.step is not None:
        overrides["step"] = args.step
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.out is not None:
        overrides["output_dir"] = args.out
    cfg = replace(cfg, **overrides).validate()

    result = run_experiment(cfg)
    if isinstance(result, BenchmarkResult):
        print(f"wrote {result.csv_path}")
        for name in result.algorithms:
            print(f"  mean final {name}: {result.final_means[name]:.6g}")
    elif isinstance(result, InterpolationResult):
        print(f"wrote {result.csv_path} and {result.svg_path}")
        print(f"  similarity score: {result.similarity_score:.6g}")
        print(f"  max l1 norm over iterates: {result.max_l1:.6g}")
    elif isinstance(result, CustomResult):
        print(f"wrote {result.csv_path}")
    return EXIT_OK


def _interior_points(region, trials: int, seed: int = 0) -> np.ndarray:
    from .rng import stream

    lower, upper = region.grid_bounds()
    span = upper - lower
    rng = stream(seed, 3)
    return lower + span * (0.05 + 0.9 * rng.uniform(0.0, 1.0, size=(trials, lower.shape[0])))


def _cmd_verify(args) -> int:
    spec = load_instance(args.instance)
    region = spec.region
    lower, upper = region.grid_bounds()
    points = _interior_points(region, args.trials)

    ok = True

    def status(label: str, passed: bool, detail: str) -> None:
        nonlocal ok
        ok = ok and passed
        print(f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}")

    worst_g = max(gradient_rel_error(spec.g.value, spec.g.gradient, x) for x in points)
    status("gradient fidelity (G part)", worst_g <= 1e-4, f"max rel err {worst_g:.2e}")
    worst_c = max(gradient_rel_error(spec.c.value, spec.c.gradient, x) for x in points)
    status("gradient fidelity (C part)", worst_c <= 1e-4, f"max rel err {worst_c:.2e}")

    interior_lo = lower + 0.05 * (upper - lower)
    interior_hi = lower + 0.95 * (upper - lower)
    dr = check_dr_submodular(spec.g.gradient, interior_lo, interior_hi, trials=args.trials)
    status(
        "diminishing returns (G part)",
        dr.passed,
        f"worst antitone violation {dr.worst_violation:.2e}",
    )
    conc = check_concave(spec.c.value, interior_lo, interior_hi, trials=args.trials)
    status("concavity (C part)", conc.passed, f"worst violation {conc.worst_violation:.2e}")

    if isinstance(spec.g, QuadraticObjective):
        hess_ok = bool(np.all(spec.g.H <= 0.0))
        status("quadratic Hessian sign (G part)", hess_ok, "all entries <= 0" if hess_ok else "positive entry found")

    probe = region.lmo(np.ones(region.dim))
    status(
        "oracle vertex feasibility",
        region.contains(probe.vertex, 1e-9),
        f"value {probe.objective_value:.6g}",
    )
    return EXIT_OK if ok else EXIT_SOLVER


def _cmd_oracle(args) -> int:
    spec = load_instance(args.instance)
    if args.lam is not None:
        spec.lam = args.lam
    problem = spec.to_problem()
    result = grid_maximize(problem, args.step)
    print(f"grid step: {result.grid_step}")
    print(f"points scanned: {result.points_scanned}")
    print(f"max value: {result.value:.12g}")
    print("argmax: " + " ".join(f"{v:.12g}" for v in result.argmax))
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_oracle(args)
    except (ConfigurationError, ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FwsubmixError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
