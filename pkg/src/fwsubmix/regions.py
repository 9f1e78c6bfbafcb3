"""Solvable convex bodies: membership, linear maximization, projection.

Three kinds are supported:

* ``Box(lower, upper)`` - axis-aligned box, possibly shifted away from 0.
* ``Cardinality(budget, dim)`` - ``{x in [0,1]^n : sum(x) <= budget}``.
* ``Polytope(A, b, u)`` - ``{x >= 0 : A x <= b, x <= u}`` with
  entry-wise non-negative ``A`` and ``b``, hence down-closed.

Every region reports a Euclidean diameter bound ``D`` (exact for boxes
and cardinality bodies, ``||u||`` for polytopes) used in the additive
error terms of the solver guarantees.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import STATUS_ITERATION_CAP, STATUS_UNBOUNDED, simplex_max
from .core import DEFAULT_TOLS, Vector, as_vector
from .errors import SimplexError, UnsupportedRegion


@dataclass(frozen=True)
class LmoResult:
    """Vertex returned by a linear maximization oracle and its value."""

    vertex: Vector
    objective_value: float


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.float64, copy=True)
    arr.setflags(write=False)
    return arr


class Box:
    """Axis-aligned box ``{lower <= x <= upper}``."""

    kind = "box"

    def __init__(self, lower, upper):
        lower = as_vector(lower)
        upper = as_vector(upper, lower.shape[0])
        if np.any(lower > upper):
            raise ValueError("box requires lower <= upper coordinate-wise")
        self.lower = _frozen(lower)
        self.upper = _frozen(upper)
        self.dim = lower.shape[0]
        # Down-closed iff the box contains the segment [0, x] for each member.
        self.down_closed = bool(np.all(lower == 0.0) and np.all(upper >= 0.0))

    def contains(self, x, tol: float = DEFAULT_TOLS.membership) -> bool:
        x = as_vector(x, self.dim)
        return bool(np.all(x >= self.lower - tol) and np.all(x <= self.upper + tol))

    def contains_many(self, X: np.ndarray, tol: float = DEFAULT_TOLS.membership) -> np.ndarray:
        return np.all(X >= self.lower - tol, axis=1) & np.all(X <= self.upper + tol, axis=1)

    def lmo(self, c) -> LmoResult:
        c = as_vector(c, self.dim)
        vertex = np.where(c > 0.0, self.upper, self.lower)  # ties go to lower
        return LmoResult(_frozen(vertex), float(c @ vertex))

    def project(self, x) -> Vector:
        x = as_vector(x, self.dim)
        return np.clip(x, self.lower, self.upper)

    def diameter_bound(self) -> float:
        corner = np.maximum(np.abs(self.lower), np.abs(self.upper))
        return float(np.linalg.norm(corner))

    def grid_bounds(self):
        return self.lower, self.upper

    def start_point(self) -> Vector:
        return self.lower.copy()

    def inside_unit_cube(self, tol: float = DEFAULT_TOLS.membership) -> bool:
        return bool(np.all(self.lower >= -tol) and np.all(self.upper <= 1.0 + tol))


class Cardinality:
    """Budgeted fraction of the unit cube: ``{x in [0,1]^n : sum(x) <= budget}``."""

    kind = "cardinality"

    def __init__(self, budget: float, dim: int):
        if not 0.0 < budget <= dim:
            raise ValueError(f"budget must lie in (0, {dim}], got {budget}")
        self.budget = float(budget)
        self.dim = int(dim)
        self.down_closed = True

    def contains(self, x, tol: float = DEFAULT_TOLS.membership) -> bool:
        x = as_vector(x, self.dim)
        return bool(
            np.all(x >= -tol)
            and np.all(x <= 1.0 + tol)
            and x.sum() <= self.budget + tol
        )

    def contains_many(self, X: np.ndarray, tol: float = DEFAULT_TOLS.membership) -> np.ndarray:
        ok = np.all(X >= -tol, axis=1) & np.all(X <= 1.0 + tol, axis=1)
        return ok & (X.sum(axis=1) <= self.budget + tol)

    def lmo(self, c) -> LmoResult:
        c = as_vector(c, self.dim)
        # Greedy fill of the budget over positive coefficients, largest
        # first; stable sort breaks ties toward the lowest index.
        order = np.argsort(-c, kind="stable")
        vertex = np.zeros(self.dim)
        remaining = self.budget
        for idx in order:
            if c[idx] <= 0.0 or remaining <= 0.0:
                break
            take = min(1.0, remaining)
            vertex[idx] = take
            remaining -= take
        return LmoResult(_frozen(vertex), float(c @ vertex))

    def project(self, x) -> Vector:
        x = as_vector(x, self.dim)
        clipped = np.clip(x, 0.0, 1.0)
        if clipped.sum() <= self.budget:
            return clipped
        # Bisect the shift theta with sum(clip(x - theta, 0, 1)) = budget.
        lo, hi = 0.0, float(x.max())
        while hi - lo > DEFAULT_TOLS.projection:
            mid = 0.5 * (lo + hi)
            if np.clip(x - mid, 0.0, 1.0).sum() > self.budget:
                lo = mid
            else:
                hi = mid
        return np.clip(x - 0.5 * (lo + hi), 0.0, 1.0)

    def diameter_bound(self) -> float:
        whole = int(np.floor(self.budget))
        frac = self.budget - whole
        return float(np.sqrt(whole + frac * frac))

    def grid_bounds(self):
        return np.zeros(self.dim), np.ones(self.dim)

    def start_point(self) -> Vector:
        return np.zeros(self.dim)

    def inside_unit_cube(self, tol: float = DEFAULT_TOLS.membership) -> bool:
        return True


class Polytope:
    """Down-closed polytope ``{x >= 0 : A x <= b, x <= u}``, ``A, b >= 0``."""

    kind = "polytope"

    def __init__(self, A, b, u):
        A = np.asarray(A, dtype=np.float64)
        if A.ndim != 2:
            raise ValueError("A must be a matrix")
        b = as_vector(b, A.shape[0])
        u = as_vector(u, A.shape[1])
        if np.any(A < 0.0) or np.any(b < 0.0) or np.any(u < 0.0):
            raise ValueError("polytope requires A, b, u entry-wise non-negative")
        self.A = _frozen(A)
        self.b = _frozen(b)
        self.u = _frozen(u)
        self.m, self.dim = A.shape
        self.down_closed = True

    def contains(self, x, tol: float = DEFAULT_TOLS.membership) -> bool:
        x = as_vector(x, self.dim)
        return bool(
            np.all(x >= -tol)
            and np.all(x <= self.u + tol)
            and np.all(self.A @ x <= self.b + tol)
        )

    def contains_many(self, X: np.ndarray, tol: float = DEFAULT_TOLS.membership) -> np.ndarray:
        ok = np.all(X >= -tol, axis=1) & np.all(X <= self.u + tol, axis=1)
        return ok & np.all(X @ self.A.T <= self.b + tol, axis=1)

    def lmo(self, c, backend: str | None = None) -> LmoResult:
        c = as_vector(c, self.dim)
        # Fold the coordinate caps in as extra rows; the all-slack basis
        # is then feasible (b, u >= 0) and no phase one is needed.
        A_full = np.vstack([self.A, np.eye(self.dim)])
        b_full = np.concatenate([self.b, self.u])
        cap = 50 * (self.m + 2 * self.dim)
        status, x = simplex_max(
            c, A_full, b_full, DEFAULT_TOLS.simplex_pivot, cap, backend=backend
        )
        if status == STATUS_ITERATION_CAP:
            raise SimplexError(f"simplex iteration cap {cap} exceeded")
        if status == STATUS_UNBOUNDED:
            raise SimplexError("unbounded column in a compact polytope tableau")
        if not self.contains(x, DEFAULT_TOLS.membership):
            raise SimplexError("simplex returned an infeasible vertex")
        return LmoResult(_frozen(x), float(c @ x))

    def project(self, x) -> Vector:
        raise UnsupportedRegion("Euclidean projection onto a general polytope is not supported")

    def diameter_bound(self) -> float:
        return float(np.linalg.norm(self.u))

    def grid_bounds(self):
        return np.zeros(self.dim), self.u

    def start_point(self) -> Vector:
        return np.zeros(self.dim)

    def inside_unit_cube(self, tol: float = DEFAULT_TOLS.membership) -> bool:
        return bool(np.all(self.u <= 1.0 + tol))
