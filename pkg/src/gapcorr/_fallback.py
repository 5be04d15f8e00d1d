"""Numpy implementation of the pair-counting kernels.

Used when the compiled extension is missing or ``GAPCORR_BACKEND=python``.
Instead of walking two pointers it runs a vectorised bisection per point,
evaluating the same floating-point predicates as the compiled sweep, so the
two backends return identical counts.
"""

import numpy as np


def _first_true(xs, lo, hi, pred):
    """Smallest j in [lo, hi) with pred(j) true, else hi.

    ``pred`` must be monotone (false...false true...true) on each row's range.
    """
    lo = lo.copy()
    hi = hi.copy()
    active = lo < hi
    while np.any(active):
        idx = np.nonzero(active)[0]
        mid = (lo[idx] + hi[idx]) // 2
        ok = pred(idx, mid)
        hi[idx[ok]] = mid[ok]
        lo[idx[~ok]] = mid[~ok] + 1
        active = lo < hi
    return lo


def count_sorted(xs, t):
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    n = xs.size
    if t >= 0.5:
        return n * (n - 1)
    i = np.arange(n, dtype=np.int64)
    stop = np.full(n, n, dtype=np.int64)
    # end of the run of forward neighbours with x[j] - x[i] <= t
    p = _first_true(xs, i + 1, stop, lambda r, j: ~(xs[j] - xs[r] <= t))
    # start of the suffix whose wrap-around distance 1 - (x[j] - x[i]) <= t
    q = _first_true(xs, p, stop, lambda r, j: 1.0 - (xs[j] - xs[r]) <= t)
    return 2 * int(np.sum((p - i - 1) + (n - q)))


def count_sorted_many(xs, ts):
    return np.array([count_sorted(xs, float(t)) for t in ts], dtype=np.int64)
