#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Three workloads, from micro to end-to-end:

* antichain minimalization of the pairwise-sum generators of two staircase
  ideals (the inner loop of ideal products),
* lattice counting of sat(I) \\ I over a box in three variables,
* full evaluation of the recursive limit family up to n = 60, which chains
  products and minimalizations thousands of times.

Usage: python benchmarks/bench_kernels.py [--repeats 3] [--limit-n 60]
"""

import argparse
import time

import numpy as np

from epsmult import _kernels
from epsmult.cohomology import h0_length
from epsmult.families import FamilySpec, LimitRecursiveRule, _eval, eval_family
from epsmult.ideal_core import MonomialIdeal


def staircase_gens(g: int, scale: int) -> np.ndarray:
    xs = np.arange(g, dtype=np.int64) * scale
    ys = (np.arange(g, dtype=np.int64)[::-1]) * scale + 1
    return np.stack([xs + 1, ys], axis=1)


def bench_minimalize(repeats: int) -> float:
    a = staircase_gens(220, 3)
    b = staircase_gens(180, 5)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(20):
            sums = _kernels.pairwise_sums(a, b)
            _kernels.minimal_rows_2d(sums)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_box_count(repeats: int) -> float:
    ideal = MonomialIdeal.from_gens(3, [(38, 0, 11), (0, 29, 17), (12, 13, 31),
                                        (40, 40, 0), (5, 35, 9)])
    sat = ideal.saturate().as_array()
    inner = ideal.as_array()
    outer = _kernels.as_array([(0, 0, 0)])
    box = np.asarray(ideal.max_exponents(), dtype=np.int64)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        _kernels.count_box(box, sat, outer, inner)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_limit_family(repeats: int, n: int) -> float:
    spec = FamilySpec(2, LimitRecursiveRule())
    best = float("inf")
    for _ in range(repeats):
        _eval.cache_clear()
        t0 = time.perf_counter()
        h0_length(eval_family(spec, n))
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--limit-n", type=int, default=60)
    args = parser.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAS_NUMBA else [])
    if not _kernels.HAS_NUMBA:
        print("numba not importable; benchmarking the numpy fallback only\n")

    jobs = [
        ("product minimalize (2d)", bench_minimalize, (args.repeats,)),
        ("box count (3d)", bench_box_count, (args.repeats,)),
        (f"limit family to n={args.limit_n}", bench_limit_family,
         (args.repeats, args.limit_n)),
    ]
    results: dict[str, dict[str, float]] = {}
    for backend in backends:
        _kernels.set_backend(backend)
        _kernels.warmup()
        for name, fn, fn_args in jobs:
            results.setdefault(name, {})[backend] = fn(*fn_args)

    width = max(len(name) for name, _, _ in jobs)
    header = f"{'workload'.ljust(width)}  " + "  ".join(f"{b:>10}" for b in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, _, _ in jobs:
        row = f"{name.ljust(width)}  "
        row += "  ".join(f"{results[name][b]:>9.4f}s" for b in backends)
        if len(backends) == 2:
            ratio = results[name]["numpy"] / results[name]["numba"]
            row += f"  {ratio:>7.2f}x"
        print(row)


if __name__ == "__main__":
    main()
