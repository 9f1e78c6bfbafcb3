"""Core problem types: validated vectors, objective pairs, reports.

The objective being maximized is ``F(x) = lam * G(x) + (1 - lam) * C(x)``
where ``G`` is a non-negative smooth function with diminishing returns
(antitone gradient) and ``C`` is a smooth concave function.  Solvers and
guarantee checks work with the "effective" parts ``lam * G`` and
``(1 - lam) * C`` so that ``F`` is exactly their sum; scaling by a
non-negative constant preserves monotonicity, non-negativity, concavity
and the diminishing-returns property, so every guarantee applies to the
effective pair verbatim.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from .errors import DimensionMismatch, OracleFailure

Vector = np.ndarray
ValueOracle = Callable[[Vector], float]
GradientOracle = Callable[[Vector], Vector]


@dataclass(frozen=True)
class Tolerances:
    """Central numeric tolerances used across modules."""

    membership: float = 1e-9
    gradient_check: float = 1e-4
    bound_slack: float = 1e-6
    iterate_feasibility: float = 1e-8
    iterate_cap: float = 1e-12
    projection: float = 1e-10
    simplex_pivot: float = 1e-9


DEFAULT_TOLS = Tolerances()


def as_vector(x, dim: int | None = None) -> Vector:
    """Validate and return ``x`` as a finite 1-d float64 array.

    Raises
    ------
    DimensionMismatch
        If ``x`` is not 1-d or its length differs from ``dim``.
    OracleFailure
        If any coordinate is NaN or infinite.
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected a vector, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise OracleFailure("vector contains NaN or Inf")
    return arr


def _checked_value(v: float, what: str) -> float:
    v = float(v)
    if not np.isfinite(v):
        raise OracleFailure(f"{what} oracle returned {v!r}")
    return v


def _checked_grad(g, dim: int, what: str) -> Vector:
    g = np.asarray(g, dtype=np.float64)
    if g.shape != (dim,):
        raise DimensionMismatch(f"{what} gradient has shape {g.shape}, expected ({dim},)")
    if not np.all(np.isfinite(g)):
        raise OracleFailure(f"{what} gradient contains NaN or Inf")
    return g


@dataclass(frozen=True)
class ObjectivePair:
    """Value/gradient oracles for the two summands of the objective.

    ``lam`` mixes the parts: ``F = lam * G + (1 - lam) * C``.  The flags
    describe the *raw* parts G and C; they carry over to the effective
    (lam-scaled) parts unchanged.
    """

    dim: int
    val_g: ValueOracle
    grad_g: GradientOracle
    val_c: ValueOracle
    grad_c: GradientOracle
    lam: float = 0.5
    g_monotone: bool = False
    g_nonneg: bool = False
    c_monotone: bool = False
    c_nonneg: bool = False
    smoothness_l: Optional[float] = None

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lam must be in [0, 1], got {self.lam}")
        if self.dim < 1:
            raise ValueError("dimension must be positive")

    # Effective (lam-weighted) parts.  F is exactly their sum.
    def value_g(self, x: Vector) -> float:
        x = as_vector(x, self.dim)
        return self.lam * _checked_value(self.val_g(x), "G")

    def value_c(self, x: Vector) -> float:
        x = as_vector(x, self.dim)
        return (1.0 - self.lam) * _checked_value(self.val_c(x), "C")

    def gradient_g(self, x: Vector) -> Vector:
        x = as_vector(x, self.dim)
        return self.lam * _checked_grad(self.grad_g(x), self.dim, "G")

    def gradient_c(self, x: Vector) -> Vector:
        x = as_vector(x, self.dim)
        return (1.0 - self.lam) * _checked_grad(self.grad_c(x), self.dim, "C")

    def value(self, x: Vector) -> float:
        """Combined objective ``lam * G(x) + (1 - lam) * C(x)``."""
        return self.value_g(x) + self.value_c(x)

    def gradient(self, x: Vector) -> Vector:
        """Gradient of the combined objective."""
        return self.gradient_g(x) + self.gradient_c(x)

    def shifted(self, offset: Vector) -> "ObjectivePair":
        """The same objective pre-composed with ``x -> x + offset``."""
        offset = as_vector(offset, self.dim)
        return ObjectivePair(
            dim=self.dim,
            val_g=lambda x, f=self.val_g, o=offset: f(x + o),
            grad_g=lambda x, f=self.grad_g, o=offset: f(x + o),
            val_c=lambda x, f=self.val_c, o=offset: f(x + o),
            grad_c=lambda x, f=self.grad_c, o=offset: f(x + o),
            lam=self.lam,
            g_monotone=self.g_monotone,
            g_nonneg=self.g_nonneg,
            c_monotone=self.c_monotone,
            c_nonneg=self.c_nonneg,
            smoothness_l=self.smoothness_l,
        )


def evaluate_objective(obj: ObjectivePair, x) -> float:
    """Evaluate the combined objective at ``x`` (deterministic)."""
    return obj.value(as_vector(x, obj.dim))


def objective_gradient(obj: ObjectivePair, x, counts: "OracleCounts | None" = None) -> Vector:
    """Gradient of the combined objective; optionally counts both oracle hits."""
    g = obj.gradient(as_vector(x, obj.dim))
    if counts is not None:
        counts.grad_g += 1
        counts.grad_c += 1
    return g


@dataclass(frozen=True)
class ProblemInstance:
    """An objective pair together with the feasible region it is solved over."""

    objective: ObjectivePair
    region: "object"  # FeasibleRegion; typed loosely to avoid an import cycle
    dimension: int

    def __post_init__(self):
        if self.objective.dim != self.dimension:
            raise DimensionMismatch("objective dimension differs from problem dimension")
        if getattr(self.region, "dim", self.dimension) != self.dimension:
            raise DimensionMismatch("region dimension differs from problem dimension")


@dataclass
class OracleCounts:
    """Per-run oracle accounting (owned by the report, never global)."""

    grad_g: int = 0
    grad_c: int = 0
    lmo: int = 0


@dataclass
class SolverReport:
    """Trajectory and accounting of a single solver run.

    ``output`` is the point the algorithm formally returns; ``best`` is the
    recorded iterate with the maximal objective value (for best-of-trajectory
    solvers the two coincide).
    """

    name: str
    iterates: List[Vector] = field(default_factory=list)
    values: List[float] = field(default_factory=list)
    output_index: int = -1
    best_index: int = -1
    counts: OracleCounts = field(default_factory=OracleCounts)
    elapsed: float = 0.0
    eta: Optional[float] = None  # certified initializer gap, when applicable

    @property
    def grad_calls_g(self) -> int:
        return self.counts.grad_g

    @property
    def grad_calls_c(self) -> int:
        return self.counts.grad_c

    @property
    def lmo_calls(self) -> int:
        return self.counts.lmo

    @property
    def output(self) -> Vector:
        return self.iterates[self.output_index]

    @property
    def output_value(self) -> float:
        return self.values[self.output_index]

    @property
    def best(self) -> Vector:
        return self.iterates[self.best_index]

    @property
    def best_value(self) -> float:
        return self.values[self.best_index]

    def record(self, point: Vector, value: float) -> None:
        pt = np.array(point, dtype=np.float64, copy=True)
        pt.setflags(write=False)
        self.iterates.append(pt)
        self.values.append(float(value))

    def finalize(self, output_index: int = -1) -> "SolverReport":
        """Fix the output iterate and locate the value argmax."""
        self.output_index = output_index % len(self.iterates)
        self.best_index = int(np.argmax(self.values))
        return self


class _Stopwatch:
    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self._t0
        return False
