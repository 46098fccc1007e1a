# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel for streaming diagonal recurrence counts.

Bit-identical to the numpy fallback: same coordinate accumulation order,
compiled with contraction disabled so no FMA sneaks in.
"""

from libc.math cimport sqrt

import numpy as np


def radius_bucket_counts(double[:, ::1] points, double[::1] radii):
    """See _kernels_py.radius_bucket_counts; contract is shared."""
    cdef Py_ssize_t n_time = points.shape[0]
    cdef Py_ssize_t dim = points.shape[1]
    cdef Py_ssize_t n_radii = radii.shape[0]
    out = np.zeros((n_radii, n_time - 1), dtype=np.int64)
    cdef long long[:, ::1] buckets = out
    cdef Py_ssize_t off, t, k, idx
    cdef double acc, diff, dist
    cdef double top = radii[n_radii - 1]
    for off in range(1, n_time):
        for t in range(n_time - off):
            acc = 0.0
            for k in range(dim):
                diff = points[t + off, k] - points[t, k]
                acc = acc + diff * diff
            dist = sqrt(acc)
            if dist > top:
                continue
            # walk down to the smallest radius still covering this pair
            idx = n_radii - 1
            while idx > 0 and radii[idx - 1] >= dist:
                idx -= 1
            buckets[idx, off - 1] += 1
    return out
