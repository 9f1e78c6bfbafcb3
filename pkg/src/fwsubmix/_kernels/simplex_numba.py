"""Numba-compiled dense tableau simplex (maximization form)."""

import numpy as np
from numba import njit


@njit(cache=True)
def simplex_max_numba(c, A, b, tol, max_iter):
    m, n = A.shape
    nvars = n + m

    # Tableau: constraint rows [A | I | b], objective row [-c | 0 | 0].
    T = np.zeros((m + 1, nvars + 1))
    for i in range(m):
        for j in range(n):
            T[i, j] = A[i, j]
        T[i, n + i] = 1.0
        T[i, nvars] = b[i]
    for j in range(n):
        T[m, j] = -c[j]

    basis = np.empty(m, dtype=np.int64)
    for i in range(m):
        basis[i] = n + i

    status = 1  # iteration cap unless we terminate
    for _ in range(max_iter):
        # Bland entering: lowest variable index with negative reduced cost.
        enter = -1
        for j in range(nvars):
            if T[m, j] < -tol:
                enter = j
                break
        if enter == -1:
            status = 0
            break

        # Ratio test; ties go to the lowest basis variable index.
        leave = -1
        best_ratio = 0.0
        best_basis = 0
        for i in range(m):
            if T[i, enter] > tol:
                ratio = T[i, nvars] / T[i, enter]
                if leave == -1 or ratio < best_ratio or (
                    ratio == best_ratio and basis[i] < best_basis
                ):
                    leave = i
                    best_ratio = ratio
                    best_basis = basis[i]
        if leave == -1:
            status = 2
            break

        piv = T[leave, enter]
        for k in range(nvars + 1):
            T[leave, k] = T[leave, k] / piv
        for i in range(m + 1):
            if i == leave:
                continue
            f = T[i, enter]
            if f != 0.0:
                for k in range(nvars + 1):
                    T[i, k] = T[i, k] - f * T[leave, k]
        basis[leave] = enter

    x = np.zeros(n)
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i, nvars]
    return status, x
