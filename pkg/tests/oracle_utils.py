"""Independent test oracles, kept away from the library code paths."""

import itertools

import numpy as np


def polytope_vertices(A, b, u, tol=1e-9):
    """All vertices of ``{x >= 0 : Ax <= b, x <= u}`` by basis enumeration.

    Considers every choice of n constraints among ``Ax <= b``, ``x <= u``
    and ``x >= 0``, solves the active system, and keeps feasible points.
    """
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    rows = np.vstack([A, np.eye(n), -np.eye(n)])
    rhs = np.concatenate([np.asarray(b, dtype=float), np.asarray(u, dtype=float), np.zeros(n)])
    vertices = []
    for combo in itertools.combinations(range(rows.shape[0]), n):
        M = rows[list(combo)]
        if abs(np.linalg.det(M)) < 1e-10:
            continue
        x = np.linalg.solve(M, rhs[list(combo)])
        if np.all(rows @ x <= rhs + tol):
            vertices.append(x)
    return np.array(vertices)


def brute_force_lmo_value(c, A, b, u):
    verts = polytope_vertices(A, b, u)
    return float(np.max(verts @ np.asarray(c, dtype=float)))


def power_iteration_norm(M, iters=200):
    """Spectral norm of a symmetric matrix by power iteration."""
    M = np.asarray(M, dtype=float)
    v = np.ones(M.shape[0]) / np.sqrt(M.shape[0])
    for _ in range(iters):
        w = M @ v
        nrm = np.linalg.norm(w)
        if nrm == 0.0:
            return 0.0
        v = w / nrm
    return float(np.linalg.norm(M @ v))


def rejection_sample_polytope(region, count, rng):
    """Uniform box samples filtered by membership (honest rejection)."""
    accepted = []
    upper = region.u if hasattr(region, "u") else region.grid_bounds()[1]
    attempts = 0
    while len(accepted) < count and attempts < 4000:
        attempts += 1
        batch = rng.uniform(0.0, upper, size=(2000, region.dim))
        mask = region.contains_many(batch)
        accepted.extend(batch[mask])
    if len(accepted) < count:
        raise RuntimeError("rejection sampling starved")
    return np.array(accepted[:count])
