"""Frank-Wolfe style solvers for DR-submodular-plus-concave maximization.

Six solvers share the :class:`SolverConfig` / :class:`SolverReport`
interface:

``greedy_fw``
    Starts at the origin and moves by ``eps * vertex`` for ``1/eps``
    steps.  For monotone non-negative parts it reaches a
    ``(1 - 1/e)``-fraction of both parts' optimal contribution, up to an
    additive ``O(eps * L * D^2)``.
``measured_greedy_fw``
    Rescales both the oracle direction and the step by ``(1 - y)``;
    needs a down-closed region inside the unit cube.  Guarantee
    coefficients are ``1 - 1/e`` per monotone part, ``1/e`` otherwise.
``gradient_combining_fw``
    Seeds the run with an approximate concave maximizer, then follows
    ``grad G + 2 grad C`` with steps ``eps^2`` for ``1/eps^3``
    iterations, returning the best recorded point: coefficient 1 on the
    concave part, ``(1 - eps)/2`` on the other.
``non_oblivious_fw``
    Follows ``exp(-1) * grad Gbar + grad C`` where ``Gbar`` reweights G
    along rays (see :class:`~fwsubmix.objectives.NonObliviousWrapper`);
    best-of-trajectory output with coefficient ``1 - 1/e - 4 eps ln(1/eps)``
    on G and ``1 - 4 eps ln(1/eps)`` on C.
``standard_fw`` and ``projected_gradient_ascent``
    Textbook baselines with a fixed step.

Solvers whose recipe starts at the origin transparently translate
shifted boxes so the lower corner maps to 0; reported iterates are in
the original coordinates.  ``enforce_preconditions=False`` disables the
monotonicity/non-negativity flag checks (benchmark mode: the guarantees
are then not claimed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    DEFAULT_TOLS,
    OracleCounts,
    ProblemInstance,
    SolverReport,
    Vector,
    _Stopwatch,
    as_vector,
    objective_gradient,
)
from .errors import ConfigurationError
from .objectives import NonObliviousWrapper, shrink_epsilon
from .regions import Box


@dataclass
class SolverConfig:
    """Quality parameter and overrides shared by all solvers.

    ``epsilon`` is normalized per solver so the relevant reciprocal
    power is an integer (shrinking into ``[epsilon/2, epsilon]``).
    ``max_iters``/``step`` override the derived schedule (benchmark
    mode); ``eta`` asserts an externally certified initializer gap when
    ``start`` is supplied to ``gradient_combining_fw``.
    """

    epsilon: float = 0.1
    max_iters: Optional[int] = None
    step: Optional[float] = None
    eta: Optional[float] = None
    init_iters: Optional[int] = None
    seed: int = 0
    start: Optional[Vector] = None
    enforce_preconditions: bool = True


def _schedule(cfg: SolverConfig, default_iters: int, default_step: float):
    iters = cfg.max_iters if cfg.max_iters is not None else default_iters
    step = cfg.step if cfg.step is not None else default_step
    if iters < 0:
        raise ConfigurationError("iteration count must be non-negative")
    if not 0.0 <= step <= 1.0:
        raise ConfigurationError(f"step must lie in [0, 1], got {step}")
    return iters, step


def _fixed_step_schedule(cfg: SolverConfig):
    iters = cfg.max_iters if cfg.max_iters is not None else 50
    if cfg.step is not None:
        step = cfg.step
    else:
        step = 1.0 / iters if iters > 0 else 0.0
    if iters < 0:
        raise ConfigurationError("iteration count must be non-negative")
    if not 0.0 <= step <= 1.0:
        raise ConfigurationError(f"step must lie in [0, 1], got {step}")
    return iters, step


def _translate_from_origin(problem: ProblemInstance):
    """Map a shifted box onto ``[0, upper - lower]``; identity otherwise."""
    region = problem.region
    if isinstance(region, Box) and np.any(region.lower != 0.0):
        offset = region.lower.copy()
        shifted = Box(np.zeros(problem.dimension), region.upper - region.lower)
        return problem.objective.shifted(offset), shifted, offset
    return problem.objective, region, np.zeros(problem.dimension)


def _require(condition: bool, message: str, enforce: bool) -> None:
    if enforce and not condition:
        raise ConfigurationError(message)


def _start_point(region, cfg: SolverConfig, dim: int) -> Vector:
    if cfg.start is not None:
        y = as_vector(cfg.start, dim)
        if not region.contains(y, DEFAULT_TOLS.iterate_feasibility):
            raise ConfigurationError("configured start point is infeasible")
        return y.copy()
    return region.start_point()


def greedy_fw(problem: ProblemInstance, cfg: SolverConfig) -> SolverReport:
    """Origin-started conditional gradient with additive vertex steps."""
    obj, region, offset = _translate_from_origin(problem)
    _require(
        obj.g_monotone and obj.g_nonneg and obj.c_monotone and obj.c_nonneg,
        "greedy_fw expects both parts monotone and non-negative",
        cfg.enforce_preconditions,
    )
    if cfg.start is not None:
        raise ConfigurationError("greedy_fw always starts at the origin")
    eps, k = shrink_epsilon(cfg.epsilon, 1)
    iters, step = _schedule(cfg, default_iters=k, default_step=eps)
    if step * iters > 1.0 + 1e-9:
        raise ConfigurationError("step * iterations must not exceed 1")

    n = problem.dimension
    y = np.zeros(n)
    if not region.contains(y, DEFAULT_TOLS.iterate_feasibility):
        raise ConfigurationError("origin start is infeasible for this region")

    report = SolverReport(name="greedy_fw")
    counts = report.counts
    with _Stopwatch() as sw:
        report.record(y + offset, obj.value(y))
        for _ in range(iters):
            g = objective_gradient(obj, y, counts)
            res = region.lmo(g)
            counts.lmo += 1
            y = y + step * res.vertex
            report.record(y + offset, obj.value(y))
    report.elapsed = sw.elapsed
    return report.finalize(-1)


def measured_greedy_fw(problem: ProblemInstance, cfg: SolverConfig) -> SolverReport:
    """Conditional gradient with ``(1 - y)``-rescaled directions and steps.

    The rescaled step keeps every coordinate below ``1 - (1 - step)^i``
    after ``i`` iterations whenever the region sits inside the unit
    cube; that cap is asserted each iteration (it is the invariant that
    makes the final point feasible by down-closedness).
    """
    obj, region, offset = _translate_from_origin(problem)
    if not region.down_closed:
        raise ConfigurationError("measured_greedy_fw requires a down-closed region")
    _require(
        obj.g_nonneg and obj.c_nonneg,
        "measured_greedy_fw expects both parts non-negative",
        cfg.enforce_preconditions,
    )
    if cfg.start is not None:
        raise ConfigurationError("measured_greedy_fw always starts at the origin")
    eps, k = shrink_epsilon(cfg.epsilon, 1)
    iters, step = _schedule(cfg, default_iters=k, default_step=eps)
    if step * iters > 1.0 + 1e-9:
        raise ConfigurationError("step * iterations must not exceed 1")

    # The per-coordinate cap below only holds when vertices stay in the
    # unit cube; benchmark polytopes may have coordinate caps above 1.
    cube_bounded = region.inside_unit_cube()
    _require(
        cube_bounded,
        "measured_greedy_fw expects the region inside the unit cube",
        cfg.enforce_preconditions,
    )

    n = problem.dimension
    y = np.zeros(n)
    report = SolverReport(name="measured_greedy_fw")
    counts = report.counts
    with _Stopwatch() as sw:
        report.record(y + offset, obj.value(y))
        for i in range(1, iters + 1):
            g = objective_gradient(obj, y, counts)
            res = region.lmo((1.0 - y) * g)
            counts.lmo += 1
            y = y + step * (1.0 - y) * res.vertex
            if cube_bounded:
                cap = 1.0 - (1.0 - step) ** i + DEFAULT_TOLS.iterate_cap
                assert y.max() <= cap and y.min() >= -DEFAULT_TOLS.iterate_cap, (
                    f"iterate cap violated at iteration {i}"
                )
            report.record(y + offset, obj.value(y))
    report.elapsed = sw.elapsed
    return report.finalize(-1)


def concave_fw_initializer(val_c, grad_c, region, iters: int, counts: OracleCounts | None = None):
    """Approximately maximize a concave oracle by vanilla Frank-Wolfe.

    Runs ``iters`` steps with the classic ``2 / (t + 2)`` schedule and
    returns ``(point, gap)`` where ``gap`` is the smallest linearization
    gap ``<grad, vertex - y>`` observed and ``point`` the iterate it was
    observed at.  By concavity the gap upper-bounds the point's distance
    to the optimal value, so the certificate applies to the returned
    point.  With ``iters <= 0`` the start is returned with an infinite
    sentinel gap.
    """
    y = region.start_point()
    if iters <= 0:
        return y, float("inf")
    best_point = y
    best_gap = float("inf")
    for t in range(iters + 1):
        g = np.asarray(grad_c(y))
        res = region.lmo(g)
        if counts is not None:
            counts.grad_c += 1
            counts.lmo += 1
        gap = max(float(g @ (res.vertex - y)), 0.0)
        if gap < best_gap:
            best_gap = gap
            best_point = y
        if t == iters:
            break
        y = y + (2.0 / (t + 2.0)) * (res.vertex - y)
    return best_point, best_gap


def gradient_combining_fw(problem: ProblemInstance, cfg: SolverConfig) -> SolverReport:
    """Best-of-trajectory solver following ``grad G + 2 grad C``."""
    obj = problem.objective
    region = problem.region
    _require(
        obj.g_monotone and obj.g_nonneg,
        "gradient_combining_fw expects the diminishing-returns part monotone and non-negative",
        cfg.enforce_preconditions,
    )
    eps, k3 = shrink_epsilon(cfg.epsilon, 3)
    iters, step = _schedule(cfg, default_iters=k3, default_step=eps * eps)

    report = SolverReport(name="gradient_combining_fw")
    counts = report.counts
    with _Stopwatch() as sw:
        if cfg.start is not None:
            y = _start_point(region, cfg, problem.dimension)
            report.eta = cfg.eta  # caller-asserted certificate, may be None
        else:
            init_iters = (
                cfg.init_iters
                if cfg.init_iters is not None
                else 10 * int(math.ceil(1.0 / eps))
            )
            y, eta = concave_fw_initializer(
                lambda x: obj.value_c(x), lambda x: obj.gradient_c(x), region, init_iters, counts
            )
            if not math.isfinite(eta):
                raise ConfigurationError(
                    "initializer produced no finite certificate (zero iterations?)"
                )
            report.eta = eta
        report.record(y, obj.value(y))
        for _ in range(iters):
            gg = obj.gradient_g(y)
            gc = obj.gradient_c(y)
            counts.grad_g += 1
            counts.grad_c += 1
            res = region.lmo(gg + 2.0 * gc)
            counts.lmo += 1
            y = (1.0 - step) * y + step * res.vertex
            report.record(y, obj.value(y))
    report.elapsed = sw.elapsed
    report.finalize(int(np.argmax(report.values)))
    return report


def non_oblivious_iterations(epsilon: float) -> int:
    """Default iteration count ``ceil((1 - ln eps) / eps^2)``."""
    return int(math.ceil((1.0 - math.log(epsilon)) / (epsilon * epsilon)))


def non_oblivious_fw(problem: ProblemInstance, cfg: SolverConfig) -> SolverReport:
    """Best-of-trajectory solver on the ray-reweighted surrogate."""
    obj = problem.objective
    region = problem.region
    if not 0.0 < cfg.epsilon < 0.25:
        raise ConfigurationError("non_oblivious_fw requires epsilon in (0, 1/4)")
    _require(
        obj.g_monotone and obj.g_nonneg and obj.c_nonneg,
        "non_oblivious_fw expects a monotone non-negative G part and non-negative C part",
        cfg.enforce_preconditions,
    )
    eps, _ = shrink_epsilon(cfg.epsilon, 1)
    iters, step = _schedule(cfg, default_iters=non_oblivious_iterations(eps), default_step=eps)
    surrogate = NonObliviousWrapper(
        lambda x: obj.value_g(x), lambda x: obj.gradient_g(x), eps, problem.dimension
    )
    inv_e = math.exp(-1.0)

    report = SolverReport(name="non_oblivious_fw")
    counts = report.counts
    with _Stopwatch() as sw:
        y = _start_point(region, cfg, problem.dimension)
        report.record(y, obj.value(y))
        for _ in range(iters):
            gbar = surrogate.gradient(y)
            counts.grad_g += surrogate.inner_calls_per_eval
            gc = obj.gradient_c(y)
            counts.grad_c += 1
            res = region.lmo(inv_e * gbar + gc)
            counts.lmo += 1
            y = (1.0 - step) * y + step * res.vertex
            report.record(y, obj.value(y))
    report.elapsed = sw.elapsed
    report.finalize(int(np.argmax(report.values)))
    return report


def standard_fw(problem: ProblemInstance, cfg: SolverConfig) -> SolverReport:
    """Classic Frank-Wolfe with a fixed step toward the oracle vertex."""
    obj = problem.objective
    region = problem.region
    iters, step = _fixed_step_schedule(cfg)
    report = SolverReport(name="standard_fw")
    counts = report.counts
    with _Stopwatch() as sw:
        y = _start_point(region, cfg, problem.dimension)
        report.record(y, obj.value(y))
        for _ in range(iters):
            g = objective_gradient(obj, y, counts)
            res = region.lmo(g)
            counts.lmo += 1
            y = y + step * (res.vertex - y)
            report.record(y, obj.value(y))
    report.elapsed = sw.elapsed
    return report.finalize(-1)


def projected_gradient_ascent(problem: ProblemInstance, cfg: SolverConfig) -> SolverReport:
    """Fixed-step gradient ascent with Euclidean projection."""
    obj = problem.objective
    region = problem.region
    iters, step = _fixed_step_schedule(cfg)
    report = SolverReport(name="pga")
    counts = report.counts
    with _Stopwatch() as sw:
        y = _start_point(region, cfg, problem.dimension)
        report.record(y, obj.value(y))
        for _ in range(iters):
            g = objective_gradient(obj, y, counts)
            y = region.project(y + step * g)
            report.record(y, obj.value(y))
    report.elapsed = sw.elapsed
    return report.finalize(-1)


pga = projected_gradient_ascent

SOLVERS = {
    "greedy_fw": greedy_fw,
    "measured_greedy_fw": measured_greedy_fw,
    "gradient_combining_fw": gradient_combining_fw,
    "non_oblivious_fw": non_oblivious_fw,
    "standard_fw": standard_fw,
    "pga": projected_gradient_ascent,
}
