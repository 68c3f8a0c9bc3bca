# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; must agree exactly with ``_pykernels``."""

from cpython cimport array
import array as _array

from libc.stdint cimport int64_t


cdef Py_ssize_t _upper_bound(const int64_t[:] a, Py_ssize_t lo, Py_ssize_t hi, int64_t x) noexcept nogil:
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] <= x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def _as_q(seq):
    if isinstance(seq, _array.array) and seq.typecode == "q":
        return seq
    return _array.array("q", seq)


def interval_order_cover(tmin, tmax):
    cdef array.array amin = _as_q(tmin)
    cdef array.array amax = _as_q(tmax)
    cdef const int64_t[:] mn = amin
    cdef const int64_t[:] mx = amax
    cdef Py_ssize_t n = mn.shape[0]
    if mx.shape[0] != n:
        raise ValueError("tmin and tmax differ in length")

    cdef array.array suffix_arr = _array.array("q", [0]) * (n + 1)
    cdef int64_t[:] suffix = suffix_arr
    cdef Py_ssize_t k, u, lo, hi, total = 0, pos = 0
    cdef int64_t best
    if n:
        best = mx[n - 1]
        for k in range(n - 1, -1, -1):
            if mx[k] < best:
                best = mx[k]
            suffix[k] = best

    with nogil:
        for u in range(n):
            lo = _upper_bound(mn, 0, n, mx[u])
            if lo < n:
                total += _upper_bound(mn, lo, n, suffix[lo]) - lo

    cdef array.array src_arr = _array.array("q", [0]) * total
    cdef array.array dst_arr = _array.array("q", [0]) * total
    cdef int64_t[:] src = src_arr
    cdef int64_t[:] dst = dst_arr
    with nogil:
        for u in range(n):
            lo = _upper_bound(mn, 0, n, mx[u])
            if lo == n:
                continue
            hi = _upper_bound(mn, lo, n, suffix[lo])
            for k in range(lo, hi):
                src[pos] = u
                dst[pos] = k
                pos += 1
    return src_arr, dst_arr


def precedence_pairs(tmin, tmax):
    cdef array.array amin = _as_q(tmin)
    cdef array.array amax = _as_q(tmax)
    cdef const int64_t[:] mn = amin
    cdef const int64_t[:] mx = amax
    cdef Py_ssize_t n = mn.shape[0]
    cdef Py_ssize_t u, k, lo, total = 0, pos = 0
    with nogil:
        for u in range(n):
            total += n - _upper_bound(mn, 0, n, mx[u])
    cdef array.array src_arr = _array.array("q", [0]) * total
    cdef array.array dst_arr = _array.array("q", [0]) * total
    cdef int64_t[:] src = src_arr
    cdef int64_t[:] dst = dst_arr
    with nogil:
        for u in range(n):
            lo = _upper_bound(mn, 0, n, mx[u])
            for k in range(lo, n):
                src[pos] = u
                dst[pos] = k
                pos += 1
    return src_arr, dst_arr
