"""Concrete objective families with closed-form gradients.

The diminishing-returns ("G") side: non-positive-Hessian quadratics,
the log-det relaxation of kernel-based set selection (softmax
extension), and the log-det information-matrix objective used in
optimal experimental design.  The concave ("C") side: similarity
quadratics built from a kernel, negative-semidefinite quadratics, and a
coordinate-wise log barrier.  Seeded generators assemble benchmark
instances from these pieces; all randomness flows through
:func:`fwsubmix.rng.stream`.
"""

from __future__ import annotations

import warnings

import numpy as np

from .core import ObjectivePair, ProblemInstance, Vector, as_vector
from .errors import DimensionMismatch, DomainError
from .regions import Box, Polytope
from .rng import stream

_SYMMETRY_TOL = 1e-12


def _check_symmetric(M: np.ndarray, name: str) -> np.ndarray:
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {M.shape}")
    if np.max(np.abs(M - M.T)) > _SYMMETRY_TOL:
        raise ValueError(f"{name} is not symmetric")
    return M


class QuadraticObjective:
    """``f(x) = 0.5 x'Hx + h'x + c`` with symmetric ``H``.

    With every entry of ``H`` non-positive the gradient ``Hx + h`` is
    antitone, i.e. the function has diminishing returns; pass
    ``require_submodular=True`` to check that at construction.
    """

    def __init__(self, H, h, c: float = 0.0, require_submodular: bool = False):
        H = _check_symmetric(H, "H")
        h = as_vector(h, H.shape[0])
        if require_submodular and np.any(H > 0.0):
            raise ValueError("diminishing returns requires H <= 0 entry-wise")
        self.H = H.copy()
        self.h = h.copy()
        self.c = float(c)
        self.H.setflags(write=False)
        self.h.setflags(write=False)
        self.dim = H.shape[0]

    def value(self, x) -> float:
        x = as_vector(x, self.dim)
        return float(0.5 * x @ self.H @ x + self.h @ x + self.c)

    def gradient(self, x) -> Vector:
        x = as_vector(x, self.dim)
        return self.H @ x + self.h


class SoftmaxExtension:
    """Log-det relaxation ``G(x) = log det(I + diag(x)(L - I))`` of
    kernel-based subset selection, for a symmetric PSD kernel ``L``.

    Eigenvalues of ``L`` in ``[-1e-9, 0)`` (floating-point assembly
    noise) are clamped to zero; anything more negative is rejected.
    """

    def __init__(self, L):
        L = _check_symmetric(L, "L")
        eigvals = np.linalg.eigvalsh(L)
        if eigvals[0] < -1e-9:
            raise ValueError(f"kernel is not PSD (min eigenvalue {eigvals[0]:.3e})")
        if eigvals[0] < 0.0:
            w, Q = np.linalg.eigh(L)
            L = (Q * np.maximum(w, 0.0)) @ Q.T
            L = 0.5 * (L + L.T)
        self.L = L.copy()
        self.L.setflags(write=False)
        self.dim = L.shape[0]
        self._LmI = L - np.eye(self.dim)

    def _m(self, x: Vector) -> np.ndarray:
        return np.eye(self.dim) + x[:, None] * self._LmI

    def value(self, x) -> float:
        x = as_vector(x, self.dim)
        sign, logabs = np.linalg.slogdet(self._m(x))
        if sign <= 0.0:
            raise DomainError("log-det argument has non-positive determinant")
        return float(logabs)

    def gradient(self, x) -> Vector:
        x = as_vector(x, self.dim)
        M = self._m(x)
        sign, _ = np.linalg.slogdet(M)
        if sign <= 0.0:
            raise DomainError("log-det argument has non-positive determinant")
        Minv = np.linalg.inv(M)
        return np.einsum("ia,ai->i", self._LmI, Minv)


class SimilarityConcave:
    """Concave similarity score ``C(x) = sum_ij L_ij (1 - (x_i - x_j)^2)``.

    Its Hessian is ``-4`` times the graph Laplacian of the kernel, so the
    function is concave whenever ``L`` is entry-wise non-negative.
    """

    def __init__(self, L):
        L = _check_symmetric(L, "L")
        self.L = L.copy()
        self.L.setflags(write=False)
        self.dim = L.shape[0]
        self._row_sums = L.sum(axis=1)
        self._total = float(L.sum())

    def value(self, x) -> float:
        x = as_vector(x, self.dim)
        quad = 2.0 * (self._row_sums @ (x * x)) - 2.0 * (x @ (self.L @ x))
        return self._total - float(quad)

    def gradient(self, x) -> Vector:
        x = as_vector(x, self.dim)
        return -4.0 * (self._row_sums * x - self.L @ x)


class DOptimalDesign:
    """Information-matrix objective ``G(x) = log det(sum_i x_i Y_i' Y_i)``
    over design row-vectors ``Y_i`` (the rows of ``Y``)."""

    def __init__(self, Y):
        Y = np.asarray(Y, dtype=np.float64)
        if Y.ndim != 2 or Y.shape[0] != Y.shape[1]:
            raise DimensionMismatch(f"Y must be a square row matrix, got {Y.shape}")
        self.Y = Y.copy()
        self.Y.setflags(write=False)
        self.dim = Y.shape[0]

    def _s(self, x: Vector) -> np.ndarray:
        return self.Y.T @ (x[:, None] * self.Y)

    def value(self, x) -> float:
        x = as_vector(x, self.dim)
        sign, logabs = np.linalg.slogdet(self._s(x))
        if sign <= 0.0 or logabs < np.log(1e-300):
            raise DomainError("information matrix is (numerically) singular")
        return float(logabs)

    def gradient(self, x) -> Vector:
        x = as_vector(x, self.dim)
        S = self._s(x)
        sign, logabs = np.linalg.slogdet(S)
        if sign <= 0.0 or logabs < np.log(1e-300):
            raise DomainError("information matrix is (numerically) singular")
        V = np.linalg.solve(S, self.Y.T)
        return np.einsum("ij,ji->i", self.Y, V)


class LogBarrier:
    """Coordinate-wise log barrier ``C(x) = scale * sum_i log(x_i)``, x > 0."""

    def __init__(self, scale: float, dim: int):
        self.scale = float(scale)
        self.dim = int(dim)

    def value(self, x) -> float:
        x = as_vector(x, self.dim)
        if np.any(x <= 0.0):
            raise DomainError("log barrier requires strictly positive coordinates")
        return float(self.scale * np.log(x).sum())

    def gradient(self, x) -> Vector:
        x = as_vector(x, self.dim)
        if np.any(x <= 0.0):
            raise DomainError("log barrier requires strictly positive coordinates")
        return self.scale / x


def shrink_epsilon(epsilon: float, power: int = 1) -> tuple[float, int]:
    """Shrink ``epsilon`` into ``[epsilon/2, epsilon]`` so that its
    ``power``-th reciprocal is an integer.

    Returns ``(normalized, k)`` with ``normalized ** -power == k``
    (``k`` exact; use it for iteration counts).
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    k = int(np.ceil(round(epsilon ** -power, 12)))
    return float(k ** (-1.0 / power)), k


class NonObliviousWrapper:
    """Reweighted surrogate of a monotone objective.

    For ``J = 1/eps`` the surrogate averages ``J`` rescaled copies of the
    inner function along the ray through ``x``::

        value(x)    = (1/J) * sum_j exp(j/J) * G((j/J) x) / (j/J)
        gradient(x) = (1/J) * sum_j exp(j/J) * grad_G((j/J) x)

    (the chain-rule factor ``j/J`` cancels the ``1/(j/J)`` weight).  Each
    evaluation consumes ``J`` inner-oracle calls.  ``eps`` is shrunk into
    ``[eps/2, eps]`` so that ``1/eps`` is an integer.
    """

    def __init__(self, val_inner, grad_inner, epsilon: float, dim: int):
        self.epsilon, self.terms = shrink_epsilon(epsilon)
        self._val = val_inner
        self._grad = grad_inner
        self.dim = int(dim)
        self._t = np.arange(1, self.terms + 1) / self.terms
        self._w = np.exp(self._t)

    @property
    def inner_calls_per_eval(self) -> int:
        return self.terms

    def value(self, x) -> float:
        x = as_vector(x, self.dim)
        total = 0.0
        for t, w in zip(self._t, self._w):
            total += w * self._val(t * x) / t
        return float(total / self.terms)

    def gradient(self, x) -> Vector:
        x = as_vector(x, self.dim)
        total = np.zeros(self.dim)
        for t, w in zip(self._t, self._w):
            total += w * np.asarray(self._grad(t * x))
        return total / self.terms


# ---------------------------------------------------------------------------
# Seeded instance generators
# ---------------------------------------------------------------------------


def _symmetric_uniform(rng: np.random.Generator, n: int, low: float, high: float) -> np.ndarray:
    # Mirror the upper triangle so every entry keeps the uniform marginal.
    T = rng.uniform(low, high, size=(n, n))
    return np.triu(T) + np.triu(T, 1).T


def make_qp_instance(n: int, m: int, seed: int):
    """Random quadratic-programming benchmark instance.

    Draws, in order, from ``stream(seed, 0)``: the symmetric matrix ``H``
    with entries uniform in ``[-1, 0)``, the constraint matrix ``A``
    uniform in ``[0.01, 1.01)``, the factor ``R`` uniform in ``[0, 1)``
    for the concave part, and the non-negativity scan points.  Returns
    ``(G, C, region)`` where ``G`` is the (non-monotone) quadratic with
    additive constant 10, ``C(x) = x'(-RR')x / 20`` and the region is
    the down-closed polytope ``{x >= 0 : Ax <= 1, x <= u}`` with the
    tight caps ``u_i = min_j b_j / A_ji``.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    rng = stream(seed, 0)
    H = _symmetric_uniform(rng, n, -1.0, 0.0)
    A = rng.uniform(0.01, 1.01, size=(m, n))
    b = np.ones(m)
    u = 1.0 / A.max(axis=0)
    h = -0.2 * (H.T @ u)
    c = 10.0

    R = rng.uniform(0.0, 1.0, size=(n, n))
    D = -(R @ R.T)

    region = Polytope(A, b, u)
    G = QuadraticObjective(H, h, c, require_submodular=True)
    C = QuadraticObjective(D / 10.0, np.zeros(n), 0.0)

    # Confirm the additive constant keeps G non-negative on a feasible
    # sample; the samples are box draws scaled into the polytope.
    X = rng.uniform(0.0, u, size=(1000, n))
    scale = np.maximum((X @ A.T / b).max(axis=1), 1.0)
    X = X / scale[:, None]
    vals = 0.5 * np.einsum("ki,ij,kj->k", X, H, X) + X @ h + c
    if vals.min() < 0.0:
        warnings.warn(
            f"additive constant {c} leaves the quadratic part negative "
            f"(min sampled value {vals.min():.4f})",
            stacklevel=2,
        )
    return G, C, region


def qp_problem(n: int, m: int, seed: int, lam: float = 0.5) -> ProblemInstance:
    """Assemble the quadratic benchmark instance into a problem."""
    G, C, region = make_qp_instance(n, m, seed)
    obj = ObjectivePair(
        dim=n,
        val_g=G.value,
        grad_g=G.gradient,
        val_c=C.value,
        grad_c=C.gradient,
        lam=lam,
        g_monotone=False,
        g_nonneg=True,
        c_monotone=False,
        c_nonneg=False,
    )
    return ProblemInstance(objective=obj, region=region, dimension=n)


def make_doptimal_instance(n: int, seed: int, identity_rows: bool = False):
    """Log-det design instance over the shifted box ``[1, 2]^n``.

    ``identity_rows=True`` replaces the Gaussian design rows with the
    identity, giving the separable objective ``sum_i log(x_i)`` (handy
    for analytic checks).
    """
    if identity_rows:
        Y = np.eye(n)
    else:
        Y = stream(seed, 0).standard_normal((n, n))
    G = DOptimalDesign(Y)
    C = LogBarrier(0.1, n)
    region = Box(np.ones(n), 2.0 * np.ones(n))
    return G, C, region


def doptimal_problem(n: int, seed: int, lam: float = 0.5, identity_rows: bool = False) -> ProblemInstance:
    G, C, region = make_doptimal_instance(n, seed, identity_rows)
    obj = ObjectivePair(
        dim=n,
        val_g=G.value,
        grad_g=G.gradient,
        val_c=C.value,
        grad_c=C.gradient,
        lam=lam,
        g_monotone=True,
        g_nonneg=False,  # log-det may dip below zero on the shifted box
        c_monotone=True,
        c_nonneg=True,
    )
    return ProblemInstance(objective=obj, region=region, dimension=n)


def make_gaussian_kernel(points, sigma: float) -> np.ndarray:
    """Gaussian kernel ``L_ij = exp(-d(i, j)^2 / (2 sigma^2))``."""
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2:
        raise ValueError("points must be a (k, d) coordinate array")
    diff = pts[:, None, :] - pts[None, :, :]
    sq = np.einsum("ijk,ijk->ij", diff, diff)
    L = np.exp(-sq / (2.0 * sigma * sigma))
    return 0.5 * (L + L.T)


def grid_points_2d(side: int) -> np.ndarray:
    """``side x side`` points spanning ``[0, 1]^2`` inclusive, row-major.

    Index 0 sits at the origin, index ``side - 1`` at ``(1, 0)``, and the
    last index at ``(1, 1)``; the spacing is ``1 / (side - 1)``.
    """
    if side < 2:
        raise ValueError("side must be at least 2")
    axis = np.arange(side) / (side - 1)
    cols, rows = np.meshgrid(axis, axis)  # row-major: x varies fastest
    return np.column_stack([cols.ravel(), rows.ravel()])


def make_bound_instance(
    n: int, m: int, seed: int, monotone_g: bool = True, monotone_c: bool = True
) -> ProblemInstance:
    """Seeded quadratic pair on a down-closed polytope inside the unit cube.

    Both parts are non-negative on the cube; ``monotone_g``/``monotone_c``
    select between monotone and genuinely non-monotone constructions, so
    all four monotonicity combinations of the guarantee matrix can be
    exercised.  Coordinate caps are clipped at 1 to keep the region
    inside ``[0, 1]^n``.
    """
    rng = stream(seed, 0)
    A = rng.uniform(0.25, 1.25, size=(m, n))
    b = np.ones(m)
    u = np.minimum(1.0, 1.0 / A.max(axis=0))
    region = Polytope(A, b, u)

    H = _symmetric_uniform(rng, n, -1.0, 0.0)
    if monotone_g:
        h = -(H @ np.ones(n)) + rng.uniform(0.1, 0.6, n)
        G = QuadraticObjective(H, h, 0.0, require_submodular=True)
    else:
        h = -0.2 * (H.T @ u)  # ascending at 0, descending at the far corner
        c = 0.5 * np.abs(H).sum()
        G = QuadraticObjective(H, h, c, require_submodular=True)

    if monotone_c:
        R = rng.uniform(0.0, 1.0, size=(n, n))
        P = R @ R.T
        d = P @ np.ones(n) + rng.uniform(0.1, 0.6, n)
        C = QuadraticObjective(-P, d, 0.0)
    else:
        w = rng.uniform(0.5, 1.5, n)
        a = rng.uniform(0.3, 0.7, n)
        peak = np.maximum(a, 1.0 - a) ** 2
        C = QuadraticObjective(np.diag(-2.0 * w), 2.0 * w * a, float(w @ (peak - a * a)))

    obj = ObjectivePair(
        dim=n,
        val_g=G.value,
        grad_g=G.gradient,
        val_c=C.value,
        grad_c=C.gradient,
        lam=0.5,
        g_monotone=monotone_g,
        g_nonneg=True,
        c_monotone=monotone_c,
        c_nonneg=True,
    )
    return ProblemInstance(objective=obj, region=region, dimension=n)
