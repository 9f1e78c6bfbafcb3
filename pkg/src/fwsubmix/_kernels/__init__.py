"""Hot numeric kernels with a numba fast path and a pure-numpy twin.

Backend selection order: explicit ``backend=`` argument, then the
``FWSUBMIX_BACKEND`` environment variable (``"numba"`` or ``"numpy"``),
then numba if importable.  Both implementations follow the exact same
pivot rules, so they produce bit-identical tableaus; ``benchmarks/``
contains a script comparing their speed.
"""

from __future__ import annotations

import os

import numpy as np

from .simplex_numpy import simplex_max_numpy

try:
    from .simplex_numba import simplex_max_numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    simplex_max_numba = None
    HAS_NUMBA = False

STATUS_OPTIMAL = 0
STATUS_ITERATION_CAP = 1
STATUS_UNBOUNDED = 2


def _resolve_backend(backend: str | None) -> str:
    if backend is None:
        backend = os.environ.get("FWSUBMIX_BACKEND", "numba" if HAS_NUMBA else "numpy")
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel backend {backend!r}")
    if backend == "numba" and not HAS_NUMBA:
        backend = "numpy"
    return backend


def simplex_max(c, A, b, tol: float, max_iter: int, backend: str | None = None):
    """Maximize ``<c, x>`` over ``{x >= 0 : A x <= b}`` with ``b >= 0``.

    The all-slack basis is feasible because ``b >= 0``, so no phase-one
    is needed.  Entering and leaving variables follow Bland's rule
    (lowest variable index), which makes the pivot sequence cycle-free
    and deterministic.

    Returns ``(status, x)`` with status 0 optimal, 1 iteration cap hit,
    2 unbounded column encountered.
    """
    c = np.ascontiguousarray(c, dtype=np.float64)
    A = np.ascontiguousarray(A, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if _resolve_backend(backend) == "numba":
        return simplex_max_numba(c, A, b, tol, max_iter)
    return simplex_max_numpy(c, A, b, tol, max_iter)
