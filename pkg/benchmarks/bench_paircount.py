#!/usr/bin/env python3
"""Time the pair-counting backends against each other.

    python benchmarks/bench_paircount.py [--sizes 1000,10000,100000,1000000] [--repeat 3]

For each N the same sorted uniform sample is counted at s = 1 by the
compiled sweep, the numpy fallback, and (for N <= 4000) the brute-force
reference. Counts are checked for equality before timings are reported.
"""

import argparse
import time

from gapcorr import _fallback
from gapcorr.generators import UniformRandom, generate
from gapcorr.paircorr import pair_count_naive

try:
    from gapcorr import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1000,10000,100000,1000000")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--s", type=float, default=1.0)
    args = ap.parse_args()

    if _kernels is None:
        print("compiled kernels not built; only the fallback is timed")
    print(f"{'N':>9} {'cython [ms]':>12} {'numpy [ms]':>12} {'naive [ms]':>12} {'speedup':>8}")
    for n in (int(v) for v in args.sizes.split(",")):
        pts = generate(UniformRandom(1), n)
        xs = pts.sorted_values()
        t = args.s / n
        t_py, c_py = best_of(lambda: _fallback.count_sorted(xs, t), args.repeat)
        t_cy = c_cy = None
        if _kernels is not None:
            t_cy, c_cy = best_of(lambda: int(_kernels.count_sorted(xs, t)), args.repeat)
            assert c_cy == c_py, (n, c_cy, c_py)
        t_nv = None
        if n <= 4000:
            t_nv, c_nv = best_of(lambda: pair_count_naive(pts, args.s), 1)
            assert c_nv == c_py, (n, c_nv, c_py)
        fmt = lambda v: f"{1e3 * v:12.3f}" if v is not None else f"{'-':>12}"
        speed = f"{t_py / t_cy:8.1f}" if t_cy else f"{'-':>8}"
        print(f"{n:>9} {fmt(t_cy)} {fmt(t_py)} {fmt(t_nv)} {speed}")


if __name__ == "__main__":
    main()
