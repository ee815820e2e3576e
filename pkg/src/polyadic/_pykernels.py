"""Pure numpy sweep kernels (fallback for the compiled ``_ckernels``).

All sweeps walk tuples in lexicographic order (last coordinate fastest) in
fixed-size chunks and return the flat index of the first failing tuple, so the
reported witness is the lowest one regardless of implementation.
The ``*_lazy`` variants take a vectorized ``mu`` instead of a flat table.
"""
from __future__ import annotations

import numpy as np

CHUNK = 1 << 18


def decode(idx, m: int, length: int) -> list:
    """Base-``m`` digits of ``idx`` (array or int), most significant first."""
    idx = np.array(idx, dtype=np.int64, copy=True)
    digits = [None] * length
    for j in range(length - 1, -1, -1):
        digits[j] = idx % m
        idx //= m
    return digits


def _chunks(total: int):
    for start in range(0, total, CHUNK):
        yield np.arange(start, min(start + CHUNK, total), dtype=np.int64)


def table_mu(flat: np.ndarray, m: int, n: int):
    strides = [m ** (n - 1 - j) for j in range(n)]

    def mu(*args):
        idx = args[0] * strides[0]
        for a, s in zip(args[1:], strides[1:]):
            idx = idx + a * s
        return flat[idx]

    return mu


def first_assoc_failure(flat, m: int, n: int):
    """``(flat_index, placement)`` of the first non-associative (2n-1)-tuple, or None.

    ``placement`` is the smallest inner position whose value differs from the
    leftmost placement.
    """
    return first_assoc_failure_lazy(table_mu(flat, m, n), m, n)


def first_assoc_failure_lazy(mu, m: int, n: int):
    length = 2 * n - 1
    for idx in _chunks(m**length):
        t = decode(idx, m, length)
        ref = mu(mu(*t[:n]), *t[n:])
        bad_any = np.zeros(idx.size, dtype=bool)
        first_place = np.zeros(idx.size, dtype=np.int64)
        for i in range(n - 1, 0, -1):
            other = mu(*t[:i], mu(*t[i:i + n]), *t[i + n:])
            bad = other != ref
            first_place[bad] = i
            bad_any |= bad
        hits = np.flatnonzero(bad_any)
        if hits.size:
            k = hits[0]
            return int(idx[k]), int(first_place[k])
    return None


def first_chain_failure(flat, star_flat, psi, b: int, m: int, n: int):
    return first_chain_failure_lazy(table_mu(flat, m, n), star_flat, psi, b, m, n)


def first_chain_failure_lazy(mu, star_flat, psi, b: int, m: int, n: int):
    """First n-tuple where ``psi_1(g_1) * ... * psi_n(g_n) * b`` differs from ``mu``."""
    psi = np.asarray(psi, dtype=np.int64)
    for idx in _chunks(m**n):
        t = decode(idx, m, n)
        acc = psi[0][t[0]]
        for j in range(1, n):
            acc = star_flat[acc * m + psi[j][t[j]]]
        acc = star_flat[acc * m + b]
        bad = np.flatnonzero(acc != mu(*t))
        if bad.size:
            return int(idx[bad[0]])
    return None


def first_medial_failure(flat, m: int, n: int):
    return first_medial_failure_lazy(table_mu(flat, m, n), m, n)


def first_medial_failure_lazy(mu, m: int, n: int):
    """First n x n matrix (row-major digits) violating the interchange law."""
    for idx in _chunks(m ** (n * n)):
        t = decode(idx, m, n * n)
        rows = [mu(*t[i * n:(i + 1) * n]) for i in range(n)]
        cols = [mu(*t[j::n]) for j in range(n)]
        bad = np.flatnonzero(mu(*rows) != mu(*cols))
        if bad.size:
            return int(idx[bad[0]])
    return None
