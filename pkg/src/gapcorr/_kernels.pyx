# cython: language_level=3
"""Compiled pair-counting kernels.

Both kernels take positions already sorted ascending in [0, 1). The
comparisons are written with the exact floating-point expressions used by
the brute-force count (``d = x[j] - x[i]``, ``1.0 - d``), so the results
agree with it bit for bit, including on boundary ties.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef int64_t _count_sorted(const double[::1] xs, double t) noexcept nogil:
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i, p = 1, q = 1
    cdef int64_t total = 0
    cdef double xi

    if t >= 0.5:
        return <int64_t>n * (n - 1)

    for i in range(n):
        xi = xs[i]
        if p < i + 1:
            p = i + 1
        while p < n and xs[p] - xi <= t:
            p += 1
        # wrap-around partners form a suffix that starts at or after p
        if q < p:
            q = p
        while q < n and not (1.0 - (xs[q] - xi) <= t):
            q += 1
        total += (p - i - 1) + (n - q)
    return 2 * total


def count_sorted(const double[::1] xs, double t):
    """Ordered pairs (i, j), i != j, with circular distance <= t."""
    cdef int64_t r
    with nogil:
        r = _count_sorted(xs, t)
    return r


def count_sorted_many(const double[::1] xs, const double[::1] ts):
    """:func:`count_sorted` for every threshold in ``ts``."""
    cdef Py_ssize_t m = ts.shape[0], k
    out = np.empty(m, dtype=np.int64)
    cdef int64_t[::1] ov = out
    with nogil:
        for k in range(m):
            ov[k] = _count_sorted(xs, ts[k])
    return out
