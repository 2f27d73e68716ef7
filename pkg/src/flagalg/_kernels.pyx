# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: overflowcheck=True
# cython: cdivision=True
"""Compiled 64-bit kernels for the hot loops: interleaved convolution and
the two triangular Moebius solves.

All arithmetic is overflow-checked; an overflowing computation raises
OverflowError and the caller retries on the arbitrary-precision pure
Python path.  Flags arrive as an int32 matrix sorted lexicographically;
lookups go through base-N packed keys and binary search.
"""

import numpy as np

DEF MAX_ARITY = 16


cdef inline Py_ssize_t _find(const long long[:] keys, long long key) noexcept:
    cdef Py_ssize_t lo = 0
    cdef Py_ssize_t hi = keys.shape[0] - 1
    cdef Py_ssize_t mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if keys[mid] < key:
            lo = mid + 1
        elif keys[mid] > key:
            hi = mid - 1
        else:
            return mid
    return -1


def convolve_i64(const int[:, :] flags, const long long[:] keys,
                 const int[:] up_indptr, const int[:] up_indices,
                 const unsigned char[:, :] leq,
                 const long long[:] f, const long long[:] g):
    """out[X] = sum over interleavings Y of f(X_1, Y) * g(Y, X_n)."""
    cdef Py_ssize_t nf = flags.shape[0]
    cdef int n = <int>flags.shape[1]
    cdef long long base = <long long>leq.shape[0]
    if n < 2 or n > MAX_ARITY:
        raise ValueError("arity out of kernel range")
    out_np = np.zeros(nf, dtype=np.int64)
    cdef long long[:] out = out_np
    cdef int[MAX_ARITY] x
    cdef int[MAX_ARITY] y
    cdef int[MAX_ARITY] pos
    cdef Py_ssize_t fi, li, ri
    cdef int d, j, z, found
    cdef long long total, lk, rk

    for fi in range(nf):
        for j in range(n):
            x[j] = flags[fi, j]
        total = 0
        d = 0
        pos[0] = up_indptr[x[0]]
        while d >= 0:
            if d == n - 1:
                lk = x[0]
                for j in range(n - 1):
                    lk = lk * base + y[j]
                rk = y[0]
                for j in range(1, n - 1):
                    rk = rk * base + y[j]
                rk = rk * base + x[n - 1]
                li = _find(keys, lk)
                ri = _find(keys, rk)
                total = total + f[li] * g[ri]
                d -= 1
                continue
            found = 0
            while pos[d] < up_indptr[x[d] + 1]:
                z = up_indices[pos[d]]
                pos[d] += 1
                if leq[z, x[d + 1]]:
                    y[d] = z
                    found = 1
                    break
            if found:
                d += 1
                if d < n - 1:
                    pos[d] = up_indptr[x[d]]
            else:
                d -= 1
        out[fi] = total
    return out_np


def mobius_i64(const int[:, :] flags, const long long[:] keys,
               const int[:] up_indptr, const int[:] up_indices,
               const unsigned char[:, :] leq,
               const int[:] order, int right):
    """Triangular solve for the left (right = 0) or right Moebius function.

    ``order`` must list flag positions by ascending rank sum for the left
    solve and descending for the right solve.
    """
    cdef Py_ssize_t nf = flags.shape[0]
    cdef int n = <int>flags.shape[1]
    cdef long long base = <long long>leq.shape[0]
    if n < 2 or n > MAX_ARITY:
        raise ValueError("arity out of kernel range")
    out_np = np.zeros(nf, dtype=np.int64)
    cdef long long[:] vals = out_np
    cdef int[MAX_ARITY] x
    cdef int[MAX_ARITY] y
    cdef int[MAX_ARITY] pos
    cdef Py_ssize_t oi, fi, ti
    cdef int d, j, z, found, constant, is_pivot
    cdef long long total, key

    for oi in range(nf):
        fi = order[oi]
        for j in range(n):
            x[j] = flags[fi, j]
        constant = 1
        for j in range(1, n):
            if x[j] != x[0]:
                constant = 0
                break
        total = 0
        d = 0
        pos[0] = up_indptr[x[0]]
        while d >= 0:
            if d == n - 1:
                # skip the pivot interleaving: Y = (X_2..X_n) on the left
                # solve, Y = (X_1..X_{n-1}) on the right solve
                is_pivot = 1
                if right:
                    for j in range(n - 1):
                        if y[j] != x[j]:
                            is_pivot = 0
                            break
                else:
                    for j in range(n - 1):
                        if y[j] != x[j + 1]:
                            is_pivot = 0
                            break
                if not is_pivot:
                    if right:
                        key = y[0]
                        for j in range(1, n - 1):
                            key = key * base + y[j]
                        key = key * base + x[n - 1]
                    else:
                        key = x[0]
                        for j in range(n - 1):
                            key = key * base + y[j]
                    ti = _find(keys, key)
                    total = total + vals[ti]
                d -= 1
                continue
            found = 0
            while pos[d] < up_indptr[x[d] + 1]:
                z = up_indices[pos[d]]
                pos[d] += 1
                if leq[z, x[d + 1]]:
                    y[d] = z
                    found = 1
                    break
            if found:
                d += 1
                if d < n - 1:
                    pos[d] = up_indptr[x[d]]
            else:
                d -= 1
        vals[fi] = (1 if constant else 0) - total
    return out_np
