"""Compare the numba and numpy kernel paths.

    python3 benchmarks/bench_kernels.py [--size N] [--repeat R]

Both paths are checked for identical output before timing.  The first
numba call (JIT compile or cache load) is excluded from the timings.
"""

import argparse
import timeit

import numpy as np

from gfib import kernels
from gfib.valuation import predict_b


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=10**6, help="indices per batch prediction")
    parser.add_argument("--scan", type=int, default=10**5, help="terms per mod-2^64 scan")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(0)
    ns = rng.integers(0, 10**12, size=args.size, dtype=np.int64)
    init = [1, 0, 0, 0, 0]

    cases = [
        (f"predict_b_batch k=5 j=2, {args.size} indices", lambda u: kernels.predict_b_batch(5, 2, ns, use_numba=u)),
        (f"v2_scan_mod64 k=5, {args.scan} terms", lambda u: kernels.v2_scan_mod64(init, args.scan, use_numba=u)),
    ]
    print(f"{'kernel':48} {'numba':>10} {'numpy':>10} {'ratio':>7}")
    for label, call in cases:
        fast, slow = call(True), call(False)
        same = all(np.array_equal(x, y) for x, y in zip(np.atleast_2d(fast), np.atleast_2d(slow)))
        if not same:
            raise SystemExit(f"{label}: numba and numpy outputs differ")
        t_numba = best_of(lambda: call(True), args.repeat)
        t_numpy = best_of(lambda: call(False), args.repeat)
        print(f"{label:48} {t_numba:9.4f}s {t_numpy:9.4f}s {t_numpy / t_numba:6.1f}x")

    sample = ns[:2000].tolist()
    t_scalar = best_of(lambda: [predict_b(5, 2, n) for n in sample], args.repeat)
    print(f"{'scalar predict_b, 2000 indices (reference)':48} {t_scalar:9.4f}s")


if __name__ == "__main__":
    main()
