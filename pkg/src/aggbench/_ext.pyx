# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: pairwise dominance counting and strict inversion counting.

Contracts mirror ``aggbench._kernels_py``; parity is enforced by tests.
"""

import numpy as np

cimport numpy as cnp

BACKEND = "compiled"


def dominance_counts(object scores_in):
    """For each row j, count rows j' with scores[j'] <= scores[j] in every column."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] scores = np.ascontiguousarray(
        scores_in, dtype=np.float64
    )
    cdef Py_ssize_t n = scores.shape[0]
    cdef Py_ssize_t k = scores.shape[1]
    counts_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] counts = counts_arr
    cdef const double[:, ::1] s = scores
    cdef Py_ssize_t j, jp, i
    cdef cnp.int64_t c
    cdef bint dominated
    for j in range(n):
        c = 0
        for jp in range(n):
            dominated = 1
            for i in range(k):
                if s[jp, i] > s[j, i]:
                    dominated = 0
                    break
            c += dominated
        counts[j] = c
    return counts_arr


def strict_inversions(object values_in):
    """Count pairs (i < j) with values[i] > values[j] by bottom-up merge sort."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] src = np.array(
        values_in, dtype=np.float64
    )
    cdef Py_ssize_t n = src.shape[0]
    if n < 2:
        return 0
    work = np.empty(n, dtype=np.float64)
    cdef double[::1] a = src
    cdef double[::1] b = work
    cdef double[::1] tmp
    cdef unsigned long long total = 0
    cdef Py_ssize_t width = 1
    cdef Py_ssize_t start, mid, end, l, r, i
    while width < n:
        start = 0
        while start < n:
            mid = start + width
            if mid > n:
                mid = n
            end = start + 2 * width
            if end > n:
                end = n
            l = start
            r = mid
            i = start
            while l < mid and r < end:
                if a[r] < a[l]:
                    b[i] = a[r]
                    r += 1
                    total += <unsigned long long> (mid - l)
                else:
                    b[i] = a[l]
                    l += 1
                i += 1
            while l < mid:
                b[i] = a[l]
                l += 1
                i += 1
            while r < end:
                b[i] = a[r]
                r += 1
                i += 1
            start = end
        tmp = a
        a = b
        b = tmp
        width *= 2
    return int(total)
