# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernels; same contracts as ``_pykernels`` (table variants only)."""
from libc.stdint cimport int64_t

cdef enum:
    MAXDIG = 64


cdef inline int64_t _lookup(const int64_t[::1] table, const int64_t* strides,
                            const int64_t* args, int n) nogil:
    cdef int64_t idx = 0
    cdef int j
    for j in range(n):
        idx += args[j] * strides[j]
    return table[idx]


cdef inline bint _advance(int64_t* d, int length, int64_t m) nogil:
    cdef int j = length - 1
    while j >= 0:
        d[j] += 1
        if d[j] < m:
            return True
        d[j] = 0
        j -= 1
    return False


def first_assoc_failure(const int64_t[::1] table, int64_t m, int n):
    cdef int length = 2 * n - 1
    if length > MAXDIG:
        raise ValueError("arity too large for compiled kernel")
    cdef int64_t d[MAXDIG]
    cdef int64_t args[MAXDIG]
    cdef int64_t strides[MAXDIG]
    cdef int64_t idx = 0, ref, val, inner
    cdef int i, j, found = -1
    cdef int64_t s = 1
    for j in range(n - 1, -1, -1):
        strides[j] = s
        s *= m
    for j in range(length):
        d[j] = 0
    if m == 0:
        return None
    with nogil:
        while True:
            for i in range(n):
                inner = _lookup(table, strides, &d[i], n)
                for j in range(i):
                    args[j] = d[j]
                args[i] = inner
                for j in range(i + 1, n):
                    args[j] = d[j + n - 1]
                val = _lookup(table, strides, args, n)
                if i == 0:
                    ref = val
                elif val != ref:
                    found = i
                    break
            if found >= 0:
                break
            idx += 1
            if not _advance(d, length, m):
                break
    if found >= 0:
        return int(idx), found
    return None


def first_chain_failure(const int64_t[::1] table, const int64_t[::1] star,
                        const int64_t[:, ::1] psi, int64_t b, int64_t m, int n):
    if n > MAXDIG:
        raise ValueError("arity too large for compiled kernel")
    cdef int64_t d[MAXDIG]
    cdef int64_t strides[MAXDIG]
    cdef int64_t idx = 0, acc
    cdef int j
    cdef bint bad = False
    cdef int64_t s = 1
    for j in range(n - 1, -1, -1):
        strides[j] = s
        s *= m
    for j in range(n):
        d[j] = 0
    if m == 0:
        return None
    with nogil:
        while True:
            acc = psi[0, d[0]]
            for j in range(1, n):
                acc = star[acc * m + psi[j, d[j]]]
            acc = star[acc * m + b]
            if acc != _lookup(table, strides, d, n):
                bad = True
                break
            idx += 1
            if not _advance(d, n, m):
                break
    if bad:
        return int(idx)
    return None


def first_medial_failure(const int64_t[::1] table, int64_t m, int n):
    cdef int length = n * n
    if length > MAXDIG:
        raise ValueError("arity too large for compiled kernel")
    cdef int64_t d[MAXDIG]
    cdef int64_t col[MAXDIG]
    cdef int64_t rows[MAXDIG]
    cdef int64_t cols[MAXDIG]
    cdef int64_t strides[MAXDIG]
    cdef int64_t idx = 0
    cdef int i, j
    cdef bint bad = False
    cdef int64_t s = 1
    for j in range(n - 1, -1, -1):
        strides[j] = s
        s *= m
    for j in range(length):
        d[j] = 0
    if m == 0:
        return None
    with nogil:
        while True:
            for i in range(n):
                rows[i] = _lookup(table, strides, &d[i * n], n)
            for j in range(n):
                for i in range(n):
                    col[i] = d[i * n + j]
                cols[j] = _lookup(table, strides, col, n)
            if _lookup(table, strides, rows, n) != _lookup(table, strides, cols, n):
                bad = True
                break
            idx += 1
            if not _advance(d, length, m):
                break
    if bad:
        return int(idx)
    return None
