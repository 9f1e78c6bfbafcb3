"""Pure-numpy twin of the simplex kernel.

Row operations are vectorized but follow the numba version's pivot
rules operation-for-operation, so both backends produce bit-identical
results.
"""

import numpy as np


def simplex_max_numpy(c, A, b, tol, max_iter):
    m, n = A.shape
    nvars = n + m

    T = np.zeros((m + 1, nvars + 1))
    T[:m, :n] = A
    T[:m, n:nvars] = np.eye(m)
    T[:m, nvars] = b
    T[m, :n] = -c

    basis = np.arange(n, nvars, dtype=np.int64)

    status = 1
    for _ in range(max_iter):
        negative = np.nonzero(T[m, :nvars] < -tol)[0]
        if negative.size == 0:
            status = 0
            break
        enter = int(negative[0])  # Bland: lowest variable index

        col = T[:m, enter]
        rows = np.nonzero(col > tol)[0]
        if rows.size == 0:
            status = 2
            break
        ratios = T[rows, nvars] / col[rows]
        best = ratios.min()
        ties = rows[ratios == best]
        leave = int(ties[np.argmin(basis[ties])])

        T[leave, :] = T[leave, :] / T[leave, enter]
        factors = T[:, enter].copy()
        factors[leave] = 0.0
        T -= np.outer(factors, T[leave, :])
        basis[leave] = enter

    x = np.zeros(n)
    structural = basis < n
    x[basis[structural]] = T[:m, nvars][structural]
    return status, x
