"""Config-driven benchmark harness with CSV and SVG output.

Four experiment kinds are supported: ``qp`` (random quadratic pairs over
down-closed polytopes), ``doptimal`` (log-det design over the shifted
box ``[1, 2]^n``), ``interpolation`` (kernel grid, trading off spread
against clustering via the mixing weight), and ``custom`` (instance file
driven).  Runs are deterministic: seeded Philox streams, deterministic
oracle tie-breaking, and ordered reductions make repeated runs
byte-identical.

Benchmark protocol: every solver runs the same fixed number of
iterations with step ``1/iterations`` (the ray-reweighted solver gets
the epsilon for which its prescribed iteration count equals the budget),
origin-started solvers start where their recipe says, and the others
share the region's reference start.  Precondition flags are not
enforced in benchmark mode, so no guarantee is claimed here.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .core import ObjectivePair, ProblemInstance
from .errors import ConfigurationError, UnsupportedRegion
from .objectives import (
    SimilarityConcave,
    SoftmaxExtension,
    grid_points_2d,
    make_gaussian_kernel,
)
from .objectives import doptimal_problem, qp_problem
from .regions import Cardinality
from .rng import stream
from .serialize import load_instance
from .solvers import SOLVERS, SolverConfig, SolverReport

EXPERIMENTS = ("qp", "doptimal", "interpolation", "custom")
DEFAULT_ALGORITHMS = tuple(SOLVERS)


@dataclass
class ExperimentConfig:
    experiment: str
    n: int = 8
    m: int = 4
    seeds: Sequence[int] = (0,)
    algorithms: Sequence[str] = DEFAULT_ALGORITHMS
    iterations: int = 50
    lam: float = 0.5
    sigma: float = 0.04
    budget: float = 25.0
    side: int = 20
    step: Optional[float] = None
    instance: Optional[str] = None
    output_dir: str = "."
    workers: int = 1

    def validate(self) -> "ExperimentConfig":
        if self.experiment not in EXPERIMENTS:
            raise ConfigurationError(f"unknown experiment {self.experiment!r}")
        if self.iterations < 1:
            raise ConfigurationError("iterations must be positive")
        if not 0.0 <= self.lam <= 1.0:
            raise ConfigurationError("lambda must lie in [0, 1]")
        if not self.seeds:
            raise ConfigurationError("at least one seed is required")
        unknown = [a for a in self.algorithms if a not in SOLVERS]
        if unknown:
            raise ConfigurationError(f"unknown algorithms: {', '.join(unknown)}")
        if self.experiment == "interpolation" and self.step is None:
            raise ConfigurationError(
                "the interpolation experiment requires an explicit step"
            )
        if self.experiment == "custom" and not self.instance:
            raise ConfigurationError("the custom experiment requires an instance file")
        return self


def _parse_seeds(text: str) -> tuple[int, ...]:
    text = text.strip()
    if ":" in text:
        lo, _, hi = text.partition(":")
        try:
            return tuple(range(int(lo), int(hi)))
        except ValueError:
            raise ConfigurationError(f"bad seed range {text!r}") from None
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise ConfigurationError(f"bad seed list {text!r}") from None


_CONFIG_KEYS = {
    "experiment": str,
    "n": int,
    "m": int,
    "iterations": int,
    "side": int,
    "workers": int,
    "lambda": float,
    "sigma": float,
    "budget": float,
    "step": float,
    "instance": str,
    "output_dir": str,
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat ``key = value`` config format."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigurationError(f"config line {lineno}: expected 'key = value'")
        key, value = key.strip(), value.strip()
        if key == "seeds":
            values["seeds"] = _parse_seeds(value)
        elif key == "algorithms":
            values["algorithms"] = tuple(tok.strip() for tok in value.split(",") if tok.strip())
        elif key in _CONFIG_KEYS:
            try:
                parsed = _CONFIG_KEYS[key](value)
            except ValueError:
                raise ConfigurationError(
                    f"config line {lineno}: bad value {value!r} for {key}"
                ) from None
            values["lam" if key == "lambda" else key] = parsed
        else:
            raise ConfigurationError(f"config line {lineno}: unknown key {key!r}")
    if "experiment" not in values:
        raise ConfigurationError("config must set 'experiment'")
    return ExperimentConfig(**values).validate()


def load_config(path) -> ExperimentConfig:
    return parse_config(Path(path).read_text())


def nonoblivious_epsilon_for_iterations(iterations: int) -> float:
    """Quality parameter whose prescribed iteration count matches the budget.

    Solves ``(1 - ln eps) / eps^2 = iterations`` by bisection on
    ``(0, 1/4)``; if the budget is too small for any admissible epsilon
    the upper end of the interval is returned.
    """
    def excess(e: float) -> float:
        return (1.0 - math.log(e)) / (e * e) - iterations

    lo, hi = 1e-4, 0.25 - 1e-9
    if excess(hi) > 0.0:
        return hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _benchmark_config(name: str, iterations: int, start) -> SolverConfig:
    step = 1.0 / iterations
    if name in ("greedy_fw", "measured_greedy_fw"):
        return SolverConfig(max_iters=iterations, step=step, enforce_preconditions=False)
    if name == "non_oblivious_fw":
        eps = nonoblivious_epsilon_for_iterations(iterations)
        return SolverConfig(
            epsilon=eps,
            max_iters=iterations,
            step=eps,
            start=start,
            enforce_preconditions=False,
        )
    return SolverConfig(
        max_iters=iterations, step=step, start=start, enforce_preconditions=False
    )


# Solvers that report only their best point; the CSV shows that value as
# a horizontal series instead of the raw trajectory.
BEST_OF_TRAJECTORY = ("gradient_combining_fw", "non_oblivious_fw")


def _run_one(name: str, problem: ProblemInstance, iterations: int) -> Optional[SolverReport]:
    start = problem.region.start_point()
    cfg = _benchmark_config(name, iterations, start)
    try:
        return SOLVERS[name](problem, cfg)
    except UnsupportedRegion:
        return None


def _series(name: str, report: Optional[SolverReport], iterations: int) -> Optional[np.ndarray]:
    if report is None:
        return None
    if name in BEST_OF_TRAJECTORY:
        return np.full(iterations, report.output_value)
    return np.asarray(report.values[1:])


@dataclass
class BenchmarkResult:
    csv_path: Path
    algorithms: tuple[str, ...]
    iterations: int
    mean_table: np.ndarray  # iterations x algorithms, NaN where unsupported
    final_means: dict

    def mean_final(self, algo: str) -> float:
        return self.final_means[algo]


def _format_cell(v: float) -> str:
    return "n/a" if not np.isfinite(v) else f"{v:.12g}"


def _write_csv(path: Path, algorithms: Sequence[str], table: np.ndarray) -> None:
    lines = ["iteration," + ",".join(algorithms)]
    for i, row in enumerate(table, start=1):
        lines.append(f"{i}," + ",".join(_format_cell(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _run_benchmark(cfg: ExperimentConfig, build_problem, csv_name: str) -> BenchmarkResult:
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    def per_seed(seed: int) -> list[Optional[np.ndarray]]:
        problem = build_problem(seed)
        return [
            _series(name, _run_one(name, problem, cfg.iterations), cfg.iterations)
            for name in cfg.algorithms
        ]

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(per_seed, cfg.seeds))
    else:
        rows = [per_seed(s) for s in cfg.seeds]

    table = np.full((cfg.iterations, len(cfg.algorithms)), np.nan)
    for j, name in enumerate(cfg.algorithms):
        series = [row[j] for row in rows if row[j] is not None]
        if series:
            table[:, j] = np.mean(series, axis=0)

    csv_path = out_dir / csv_name
    _write_csv(csv_path, cfg.algorithms, table)
    final_means = {name: float(table[-1, j]) for j, name in enumerate(cfg.algorithms)}
    return BenchmarkResult(csv_path, tuple(cfg.algorithms), cfg.iterations, table, final_means)


def run_qp_experiment(cfg: ExperimentConfig) -> BenchmarkResult:
    cfg.validate()
    return _run_benchmark(
        cfg,
        lambda seed: qp_problem(cfg.n, cfg.m, seed, cfg.lam),
        f"qp_n{cfg.n}_m{cfg.m}.csv",
    )


def run_doptimal_experiment(cfg: ExperimentConfig, identity_rows: bool = False) -> BenchmarkResult:
    cfg.validate()
    return _run_benchmark(
        cfg,
        lambda seed: doptimal_problem(cfg.n, seed, cfg.lam, identity_rows=identity_rows),
        f"doptimal_n{cfg.n}.csv",
    )


# ---------------------------------------------------------------------------
# Interpolation experiment
# ---------------------------------------------------------------------------


def interpolation_problem(cfg: ExperimentConfig) -> ProblemInstance:
    points = grid_points_2d(cfg.side)
    L = make_gaussian_kernel(points, cfg.sigma)
    G = SoftmaxExtension(L)
    C = SimilarityConcave(L)
    n = cfg.side * cfg.side
    obj = ObjectivePair(
        dim=n,
        val_g=G.value,
        grad_g=G.gradient,
        val_c=C.value,
        grad_c=C.gradient,
        lam=cfg.lam,
        g_monotone=False,
        g_nonneg=False,
        c_monotone=False,
        c_nonneg=True,
    )
    return ProblemInstance(objective=obj, region=Cardinality(cfg.budget, n), dimension=n)


def interpolation_start(cfg: ExperimentConfig) -> np.ndarray:
    """Seeded non-constant start using the full budget.

    A constant vector is a stationary point of the similarity part (its
    gradient depends only on coordinate differences), so the start is
    drawn from a seeded stream and rescaled to the budget instead.
    """
    n = cfg.side * cfg.side
    rng = stream(cfg.seeds[0], 1)
    raw = rng.uniform(0.0, 1.0, n)
    x0 = raw * (cfg.budget / raw.sum())
    if x0.max() > 1.0:
        x0 = Cardinality(cfg.budget, n).project(x0)
    return x0


@dataclass
class InterpolationResult:
    csv_path: Path
    svg_path: Path
    report: SolverReport
    final_x: np.ndarray
    similarity_score: float
    max_l1: float


def pairwise_similarity_score(L: np.ndarray, x: np.ndarray) -> float:
    """Mass-weighted kernel mass ``sum_ij L_ij x_i x_j``."""
    return float(x @ (L @ x))


def write_heatmap_svg(path: Path, values: np.ndarray, side: int, cell: int = 18) -> None:
    """Grayscale heatmap; darker squares mean larger entries.

    Grid row 0 is drawn at the bottom so the origin sits bottom-left.
    """
    values = np.clip(np.asarray(values, dtype=np.float64), 0.0, 1.0)
    size = side * cell
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    ]
    for r in range(side):
        for c in range(side):
            shade = int(round(255.0 * (1.0 - values[r * side + c])))
            parts.append(
                f'<rect x="{c * cell}" y="{(side - 1 - r) * cell}" '
                f'width="{cell}" height="{cell}" fill="rgb({shade},{shade},{shade})"/>'
            )
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n")


def run_interpolation_experiment(cfg: ExperimentConfig) -> InterpolationResult:
    cfg.validate()
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    problem = interpolation_problem(cfg)
    start = interpolation_start(cfg)
    solver_cfg = SolverConfig(
        max_iters=cfg.iterations,
        step=cfg.step,
        start=start,
        enforce_preconditions=False,
    )
    report = SOLVERS["gradient_combining_fw"](problem, solver_cfg)
    final_x = np.asarray(report.output)
    points = grid_points_2d(cfg.side)
    L = make_gaussian_kernel(points, cfg.sigma)

    tag = f"{cfg.lam:g}".replace(".", "p")
    csv_path = out_dir / f"interpolation_lambda{tag}.csv"
    lines = ["index,x,y,value"]
    for i, (px, py) in enumerate(points):
        lines.append(f"{i},{px:.12g},{py:.12g},{final_x[i]:.12g}")
    csv_path.write_text("\n".join(lines) + "\n")

    svg_path = out_dir / f"interpolation_lambda{tag}.svg"
    write_heatmap_svg(svg_path, final_x, cfg.side)

    return InterpolationResult(
        csv_path=csv_path,
        svg_path=svg_path,
        report=report,
        final_x=final_x,
        similarity_score=pairwise_similarity_score(L, final_x),
        max_l1=max(float(np.sum(np.asarray(it))) for it in report.iterates),
    )


# ---------------------------------------------------------------------------
# Custom (instance-file) experiment
# ---------------------------------------------------------------------------


@dataclass
class CustomResult:
    csv_path: Path
    reports: dict


def run_custom(cfg: ExperimentConfig) -> CustomResult:
    cfg.validate()
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    spec = load_instance(cfg.instance)
    problem = spec.to_problem()

    reports = {}
    columns = []
    for name in cfg.algorithms:
        report = _run_one(name, problem, cfg.iterations)
        series = _series(name, report, cfg.iterations)
        columns.append(np.full(cfg.iterations, np.nan) if series is None else series)
        if report is not None:
            reports[name] = report

    table = np.column_stack(columns) if columns else np.zeros((cfg.iterations, 0))
    csv_path = out_dir / "custom.csv"
    _write_csv(csv_path, cfg.algorithms, table)
    return CustomResult(csv_path=csv_path, reports=reports)


def run_experiment(cfg: ExperimentConfig):
    cfg.validate()
    if cfg.experiment == "qp":
        return run_qp_experiment(cfg)
    if cfg.experiment == "doptimal":
        return run_doptimal_experiment(cfg)
    if cfg.experiment == "interpolation":
        return run_interpolation_experiment(cfg)
    return run_custom(cfg)
