"""Independent verification oracles: finite differences, structural
probes, a brute-force grid maximizer, and guarantee-bound evaluation.

Everything here deliberately avoids the code paths it checks: gradients
are probed by central differences, optima by exhaustive grid scans, and
solver outputs by explicit lower-bound inequalities with concrete
constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOLS, ProblemInstance, Vector, as_vector
from .errors import ConfigurationError, DomainError
from .rng import stream

GRID_DIMENSION_GUARD = 6
GRID_POINT_GUARD = 5_000_000


def finite_diff_grad(f, x, h: float = 1e-5) -> Vector:
    """Central-difference gradient ``(f(x + h e_i) - f(x - h e_i)) / 2h``.

    If a stencil point falls outside the oracle's domain the step is
    shrunk once by 10x; a second domain failure propagates.
    """
    x = as_vector(x)
    for attempt_h in (h, h / 10.0):
        try:
            g = np.empty_like(x)
            for i in range(x.shape[0]):
                e = np.zeros_like(x)
                e[i] = attempt_h
                g[i] = (f(x + e) - f(x - e)) / (2.0 * attempt_h)
            return g
        except DomainError:
            if attempt_h != h:
                raise
    raise AssertionError("unreachable")


def gradient_rel_error(val, grad, x, h: float = 1e-5) -> float:
    """Relative mismatch between a closed-form gradient and central differences."""
    fd = finite_diff_grad(val, x, h)
    g = np.asarray(grad(x))
    return float(np.linalg.norm(fd - g) / max(1.0, np.linalg.norm(g)))


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    worst_violation: float
    trials: int

    def __bool__(self) -> bool:
        return self.passed


def check_dr_submodular(grad, lower, upper, trials: int = 200, tol: float = 1e-8, seed: int = 0) -> CheckReport:
    """Probe gradient antitonicity: ``grad(a) >= grad(b)`` whenever ``a <= b``.

    Samples ordered pairs in the box and reports the worst coordinate-wise
    violation ``max(grad(b) - grad(a))``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    lower = as_vector(lower)
    upper = as_vector(upper, lower.shape[0])
    rng = stream(seed, 0)
    worst = -np.inf
    for _ in range(trials):
        a = lower + rng.uniform(0.0, 1.0, lower.shape[0]) * (upper - lower)
        b = a + rng.uniform(0.0, 1.0, lower.shape[0]) * (upper - a)
        worst = max(worst, float(np.max(np.asarray(grad(b)) - np.asarray(grad(a)))))
    return CheckReport(worst <= tol, worst, trials)


def check_concave(val, lower, upper, trials: int = 200, tol: float = 1e-9, seed: int = 0) -> CheckReport:
    """Probe concavity on random segments:
    ``C(t x + (1 - t) y) >= t C(x) + (1 - t) C(y)`` up to ``tol``."""
    if trials < 1:
        raise ValueError("trials must be positive")
    lower = as_vector(lower)
    upper = as_vector(upper, lower.shape[0])
    rng = stream(seed, 1)
    worst = -np.inf
    for _ in range(trials):
        x = lower + rng.uniform(0.0, 1.0, lower.shape[0]) * (upper - lower)
        y = lower + rng.uniform(0.0, 1.0, lower.shape[0]) * (upper - lower)
        t = rng.uniform(0.0, 1.0)
        violation = t * val(x) + (1.0 - t) * val(y) - val(t * x + (1.0 - t) * y)
        worst = max(worst, float(violation))
    return CheckReport(worst <= tol, worst, trials)


def estimate_smoothness(grad, lower, upper, samples: int = 1000, seed: int = 0, inflate: float = 1.5) -> float:
    """Empirical gradient-Lipschitz constant, inflated for safety.

    Returns ``inflate * max ||grad(a) - grad(b)|| / ||a - b||`` over
    sampled pairs in the box.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    lower = as_vector(lower)
    upper = as_vector(upper, lower.shape[0])
    rng = stream(seed, 2)
    worst = 0.0
    for _ in range(samples):
        a = lower + rng.uniform(0.0, 1.0, lower.shape[0]) * (upper - lower)
        b = lower + rng.uniform(0.0, 1.0, lower.shape[0]) * (upper - lower)
        dist = float(np.linalg.norm(a - b))
        if dist < 1e-12:
            continue
        ratio = float(np.linalg.norm(np.asarray(grad(a)) - np.asarray(grad(b)))) / dist
        worst = max(worst, ratio)
    return inflate * worst


@dataclass(frozen=True)
class GridOracleResult:
    """Best feasible point of an axis-aligned grid scan."""

    argmax: Vector
    value: float
    grid_step: float
    points_scanned: int
    problem: ProblemInstance


def grid_maximize(problem: ProblemInstance, step: float) -> GridOracleResult:
    """Exhaustively maximize over ``{0, step, 2 step, ...}^n`` inside the region.

    The scan value lower-bounds the true optimum, so guarantee checks
    built on it are never stricter than the underlying claims.  Ties are
    broken toward the lexicographically smallest point.  Guarded to
    ``n <= 6`` and a few million grid nodes.
    """
    if step <= 0.0:
        raise ConfigurationError("grid step must be positive")
    n = problem.dimension
    if n > GRID_DIMENSION_GUARD:
        raise ConfigurationError(f"grid oracle is limited to {GRID_DIMENSION_GUARD} dimensions")
    region = problem.region
    lower, upper = region.grid_bounds()

    axes = []
    total = 1
    for i in range(n):
        ks = np.arange(int(np.floor(upper[i] / step + 1e-12)) + 1)
        vals = ks * step
        vals = vals[vals >= lower[i] - 1e-12]
        if vals.size == 0:
            raise ConfigurationError("grid step too coarse for this region")
        axes.append(vals)
        total *= vals.size
        if total > GRID_POINT_GUARD:
            raise ConfigurationError("grid too large; increase the step")

    mesh = np.meshgrid(*axes, indexing="ij")
    X = np.stack([m.ravel() for m in mesh], axis=1)  # lexicographic order
    feasible = X[region.contains_many(X, DEFAULT_TOLS.membership)]
    if feasible.shape[0] == 0:
        raise ConfigurationError("no feasible grid point; refine the step")

    obj = problem.objective
    best_value = -np.inf
    best_point = None
    for row in feasible:
        v = obj.value(row)
        if v > best_value:
            best_value = v
            best_point = row
    return GridOracleResult(
        argmax=np.array(best_point),
        value=float(best_value),
        grid_step=float(step),
        points_scanned=int(feasible.shape[0]),
        problem=problem,
    )


@dataclass(frozen=True)
class GuaranteeBound:
    """Coefficients of a solver's lower-bound certificate.

    The certified inequality is ``F(output) >= alpha * G(opt) + beta *
    C(opt) - additive_error`` with G and C the lam-weighted parts.
    ``alpha`` may go negative once the epsilon-degradation terms exceed
    the base coefficient; the inequality stays valid (and testable), so
    no clamping is applied.
    """

    alpha: float
    beta: float
    additive_error: float
    source_row: str

    def __post_init__(self):
        if self.alpha > 1.0 + 1e-12 or self.beta > 1.0 + 1e-12:
            raise ValueError("coefficients cannot exceed 1")
        if self.additive_error < 0.0:
            raise ValueError("additive error must be non-negative")


def greedy_bound(eps: float, L: float, D: float) -> GuaranteeBound:
    a = 1.0 - math.exp(-1.0)
    return GuaranteeBound(a, a, eps * L * D * D, "greedy-monotone")


def measured_bound(g_monotone: bool, c_monotone: bool, eps: float, L: float, D: float) -> GuaranteeBound:
    hi, lo = 1.0 - math.exp(-1.0), math.exp(-1.0)
    row = f"measured-g{'mono' if g_monotone else 'gen'}-c{'mono' if c_monotone else 'gen'}"
    return GuaranteeBound(
        hi if g_monotone else lo,
        hi if c_monotone else lo,
        eps * L * D * D,
        row,
    )


def gradient_combining_bound(eps: float, eta: float, L: float, D: float) -> GuaranteeBound:
    return GuaranteeBound(
        0.5 * (1.0 - eps), 1.0, eps * (eta + 3.0 * L * D * D), "gradient-combining"
    )


def non_oblivious_bound(eps: float, L: float, D: float) -> GuaranteeBound:
    degrade = 4.0 * eps * math.log(1.0 / eps)
    return GuaranteeBound(
        1.0 - math.exp(-1.0) - degrade,
        1.0 - degrade,
        4.0 * eps * L * D * D,
        "non-oblivious",
    )


@dataclass(frozen=True)
class GuaranteeCheck:
    passed: bool
    achieved: float
    required: float
    bound: GuaranteeBound

    def __bool__(self) -> bool:
        return self.passed


def check_guarantee(
    report,
    bound: GuaranteeBound,
    oracle: GridOracleResult,
    slack: float = DEFAULT_TOLS.bound_slack,
) -> GuaranteeCheck:
    """Evaluate a solver output against its certificate at a grid optimum.

    The inequality is tested at the grid argmax, which is a feasible
    point; every certificate here holds against *any* feasible
    comparator, so this check is sound.
    """
    obj = oracle.problem.objective
    g_opt = obj.value_g(oracle.argmax)
    c_opt = obj.value_c(oracle.argmax)
    required = bound.alpha * g_opt + bound.beta * c_opt - bound.additive_error - slack
    achieved = report.output_value
    return GuaranteeCheck(achieved >= required, achieved, required, bound)
