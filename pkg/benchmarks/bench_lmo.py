#!/usr/bin/env python3
"""Benchmark the simplex LMO kernel: numba fast path vs numpy fallback.

The polytope LMO dominates the quadratic benchmark runtime (one call per
solver iteration per seed), so it is the kernel worth jitting.  Usage::

    python3 benchmarks/bench_lmo.py [--calls 2000]
"""

import argparse
import time

import numpy as np

from fwsubmix._kernels import HAS_NUMBA
from fwsubmix.regions import Polytope
from fwsubmix.rng import stream


def make_workload(count, n, m, seed=0):
    rng = stream(seed, 0)
    regions, directions = [], []
    for _ in range(count):
        A = rng.uniform(0.01, 1.01, size=(m, n))
        regions.append(Polytope(A, np.ones(m), 1.0 / A.max(axis=0)))
        directions.append(rng.uniform(-1.0, 1.0, n))
    return regions, directions


def time_backend(backend, regions, directions, repeats=3):
    # one throwaway pass so numba compilation is not measured
    regions[0].lmo(directions[0], backend=backend)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for region, c in zip(regions, directions):
            region.lmo(c, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--calls", type=int, default=2000)
    args = parser.parse_args()

    print(f"{'n':>4} {'m':>4} {'numpy us/call':>14} {'numba us/call':>14} {'speedup':>8}")
    for n, m in ((8, 4), (8, 12), (16, 8), (16, 24), (32, 16)):
        regions, directions = make_workload(args.calls, n, m)
        t_np = time_backend("numpy", regions, directions)
        if HAS_NUMBA:
            t_nb = time_backend("numba", regions, directions)
            print(
                f"{n:>4} {m:>4} {1e6 * t_np / args.calls:>14.1f} "
                f"{1e6 * t_nb / args.calls:>14.1f} {t_np / t_nb:>7.1f}x"
            )
        else:
            print(f"{n:>4} {m:>4} {1e6 * t_np / args.calls:>14.1f} {'n/a':>14} {'n/a':>8}")


if __name__ == "__main__":
    main()
