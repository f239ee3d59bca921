#!/usr/bin/env python3
"""Benchmark the compiled counting kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat R]

Times count_leq_naive and count_leq_grid on synthetic uniform points at
pair-correlation radii (s = 1, so radius = N^(-1/d)) and prints one row
per workload with the speedup of the compiled backend.
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from qmcpairs import _kernels_py  # noqa: E402
from qmcpairs.paircorr import _float_grid_g  # noqa: E402

try:
    from qmcpairs import _kernels as compiled
except ImportError:
    compiled = None


def timeit(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if compiled is None:
        print("compiled kernels not built (run `python setup.py build_ext "
              "--inplace`); timing the numpy fallback only")

    workloads = [
        ("naive", 4000, 1),
        ("naive", 4000, 2),
        ("naive", 4000, 3),
        ("grid", 200_000, 1),
        ("grid", 200_000, 2),
        ("grid", 200_000, 3),
    ]
    rng = np.random.default_rng(0)
    print(f"{'kernel':>6} {'N':>8} {'d':>2} {'python':>10} {'cython':>10} {'speedup':>8}")
    for kind, n, d in workloads:
        pts = rng.random((n, d))
        radius = n ** (-1.0 / d)
        g = _float_grid_g(n, d, radius)
        if kind == "naive":
            py = lambda: _kernels_py.count_leq_naive(pts, radius)
            cy = None if compiled is None else (
                lambda: compiled.count_leq_naive(pts, radius)
            )
        else:
            py = lambda: _kernels_py.count_leq_grid(pts, radius, g)
            cy = None if compiled is None else (
                lambda: compiled.count_leq_grid(pts, radius, g)
            )
        t_py, n_py = timeit(py, args.repeat)
        if cy is None:
            print(f"{kind:>6} {n:>8} {d:>2} {t_py:>9.4f}s {'-':>10} {'-':>8}")
            continue
        t_cy, n_cy = timeit(cy, args.repeat)
        assert n_py == n_cy, "backends disagree"
        print(
            f"{kind:>6} {n:>8} {d:>2} {t_py:>9.4f}s {t_cy:>9.4f}s "
            f"{t_py / t_cy:>7.1f}x"
        )


if __name__ == "__main__":
    main()
