"""Time the compiled and numpy kernels on the same sample grid.

Usage::

    python3 benchmarks/bench_kernels.py --type D4 --points 200000 --repeat 5
"""

import argparse
import os
import time
from fractions import Fraction

import numpy as np

from toda_atlas import kernels
from toda_atlas.solution import Solution, random_params
from toda_atlas.verify import sample_points


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--type", default="D4")
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=None, help="worker threads for the chunked path")
    args = ap.parse_args(argv)
    if args.threads is not None:
        os.environ["TODA_ATLAS_THREADS"] = str(args.threads)

    rng = np.random.default_rng(args.seed)
    rank = int(args.type[1:])
    gamma = tuple(Fraction(int(k), 3) for k in rng.integers(-2, 7, rank))
    sol = Solution(random_params(args.type, gamma, rng))
    z = sample_points(args.points, 1e-3, 1e3, seed=args.seed)
    backends = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])

    print(f"type {args.type}  gamma {','.join(map(str, gamma))}  points {z.size}  threads {kernels.thread_count()}")
    results = {}
    for b in backends:
        sol.logp_and_laplacian(z[:64], backend=b)  # warm up
        t = best_time(lambda: sol.logp_and_laplacian(z, backend=b), args.repeat)
        results[b] = t
        print(f"{b:7s} {t * 1e3:10.2f} ms  {z.size / t / 1e6:8.2f} Mpts/s")
    if len(results) == 2:
        a, c = sol.logp_and_laplacian(z, backend="python"), sol.logp_and_laplacian(z, backend="cython")
        gap = max(float(np.max(np.abs(x - y) / (1 + np.abs(x)))) for x, y in zip(a, c))
        print(f"speedup {results['python'] / results['cython']:.2f}x  max relative gap {gap:.1e}")
    else:
        print("compiled kernel not available; only the numpy kernel was timed")


if __name__ == "__main__":
    main()
