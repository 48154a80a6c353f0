"""Compare the compiled and pure-numpy exact matrix product.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Prints one row per (n, m) case with the median time of each backend and the
speedup; also checks that both return identical coefficients.
"""

import argparse
import statistics
import sys
import time

import numpy as np

from braidlab import cyclotomic as cy
from braidlab import kernels

CASES = [(4, 6), (16, 6), (16, 12), (64, 6), (64, 10), (128, 12), (256, 6)]


def _median_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if kernels.compiled_matmul is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'n':>5} {'m':>4} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for n, m in CASES:
        d = cy.field_degree(m)
        # sparse-ish integer matrices, like the operators in the ladder code
        A = rng.integers(-2, 3, size=(n, n, d)) * (rng.random((n, n, 1)) < 0.2)
        B = rng.integers(-2, 3, size=(n, n, d)) * (rng.random((n, n, 1)) < 0.2)
        _, R, _ = cy._tables(m)
        A, B = np.ascontiguousarray(A, dtype=np.int64), np.ascontiguousarray(B, dtype=np.int64)
        tp, ref = _median_time(lambda: kernels.fallback_matmul(A, B, R), args.repeat)
        tc, got = _median_time(lambda: kernels.compiled_matmul(A, B, R), args.repeat)
        if not np.array_equal(np.asarray(ref, dtype=np.int64), np.asarray(got, dtype=np.int64)):
            print(f"mismatch at n={n}, m={m}", file=sys.stderr)
            return 1
        print(f"{n:5d} {m:4d} {tp * 1e3:10.3f} {tc * 1e3:10.3f} {tp / tc:8.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
