"""Sweep-kernel dispatch.

The compiled ``_ckernels`` extension is used when it imports and the system has
a materialized table; otherwise the numpy fallback in ``_pykernels`` runs.
Set ``POLYADIC_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("POLYADIC_PURE"):
        raise ImportError("fallback forced")
    from . import _ckernels
except ImportError:
    _ckernels = None

IMPLEMENTATION = "compiled" if _ckernels is not None else "python"

_MAX_DIGITS = 64


def _backend(length: int, impl: str | None):
    if impl == "python" or _ckernels is None or length > _MAX_DIGITS:
        return _pykernels
    return _ckernels


def first_assoc_failure(sys, impl: str | None = None):
    """``(flat_index, placement)`` of the lowest non-associative tuple, or None."""
    m, n = sys.m, sys.arity
    if not sys.has_table:
        return _pykernels.first_assoc_failure_lazy(sys.apply, m, n)
    return _backend(2 * n - 1, impl).first_assoc_failure(sys.flat_table, m, n)


def first_chain_failure(sys, star: np.ndarray, psi: np.ndarray, b: int,
                        impl: str | None = None):
    m, n = sys.m, sys.arity
    star_flat = np.ascontiguousarray(star.reshape(-1), dtype=np.int64)
    psi = np.ascontiguousarray(psi, dtype=np.int64)
    if not sys.has_table:
        return _pykernels.first_chain_failure_lazy(sys.apply, star_flat, psi, int(b), m, n)
    return _backend(n, impl).first_chain_failure(sys.flat_table, star_flat, psi, int(b), m, n)


def first_medial_failure(sys, impl: str | None = None):
    m, n = sys.m, sys.arity
    if not sys.has_table:
        return _pykernels.first_medial_failure_lazy(sys.apply, m, n)
    return _backend(n * n, impl).first_medial_failure(sys.flat_table, m, n)


decode = _pykernels.decode
