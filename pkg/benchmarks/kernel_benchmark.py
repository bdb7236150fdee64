#!/usr/bin/env python3
"""Time the compiled kernels against the NumPy fallback.

Usage: python benchmarks/kernel_benchmark.py [--quick]

The two hot kernels dominate large runs: pairwise dominance counting is
O(n^2 k) and backs the dependency weights; strict inversion counting backs
every Kendall distance. Results are wall-clock medians over repeats.
"""

import argparse
import time

import numpy as np

from aggbench import _kernels_py

try:
    from aggbench import _ext
except ImportError:
    _ext = None


def timeit(fn, *args, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def run(quick: bool) -> None:
    rng = np.random.default_rng(0)
    if _ext is None:
        print("compiled extension not built; only timing the fallback")

    dominance_sizes = [(500, 5), (2000, 8), (5000, 10)]
    inversion_sizes = [10_000, 100_000, 1_000_000]
    if quick:
        dominance_sizes = dominance_sizes[:2]
        inversion_sizes = inversion_sizes[:2]

    print(f"{'kernel':<28} {'size':<16} {'python':>10} {'compiled':>10} {'speedup':>9}")
    for n, k in dominance_sizes:
        scores = rng.integers(0, 32, size=(n, k)) / 31.0
        t_py, r_py = timeit(_kernels_py.dominance_counts, scores)
        row = f"{'dominance_counts':<28} {f'n={n},k={k}':<16} {t_py:>9.3f}s"
        if _ext is not None:
            t_c, r_c = timeit(_ext.dominance_counts, scores)
            assert np.array_equal(r_py, r_c)
            row += f" {t_c:>9.3f}s {t_py / t_c:>8.1f}x"
        print(row)
    for n in inversion_sizes:
        values = rng.choice(np.linspace(0, 1, 1000), size=n)
        t_py, r_py = timeit(_kernels_py.strict_inversions, values)
        row = f"{'strict_inversions':<28} {f'n={n}':<16} {t_py:>9.3f}s"
        if _ext is not None:
            t_c, r_c = timeit(_ext.strict_inversions, values)
            assert r_py == r_c
            row += f" {t_c:>9.3f}s {t_py / t_c:>8.1f}x"
        print(row)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller sizes")
    run(parser.parse_args().quick)
