"""Polyadic systems and the arity-changing constructions on them.

Three carrier kinds are supported:

* :class:`FiniteTable`: an explicit ``m**n`` result table over ``0..m-1``;
* :class:`DerivedModular`: ``(g_1 + ... + g_n + c) mod m``, materialized lazily;
* :class:`ClosedForm`: a numeric family with an evaluation rule, a domain
  predicate and a comparison tolerance.

Every system exposes ``apply(*args)``, the raw vectorized operation (numpy arrays
broadcast through it), and the validated scalar entry point :func:`evaluate`.
Closed-form rules return NaN where a bracket leaves the domain, so invalidity
propagates through any composition and is detected once at the end.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Sequence

import numpy as np

from .errors import ArityMismatch, DomainViolation, PositionOverlap, SweepBudgetExceeded

Element = Any
Polyad = tuple

DEFAULT_BUDGET = 10**7
TABLE_LIMIT = 10**6
DEFAULT_TOL = 1e-9


def sweep_budget(budget: int | None = None) -> int:
    """Resolve a sweep budget: explicit value, else ``POLYADIC_BUDGET``, else 10**7."""
    if budget is not None:
        return int(budget)
    env = os.environ.get("POLYADIC_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def require_budget(needed: int, budget: int | None, what: str = "sweep") -> None:
    limit = sweep_budget(budget)
    if needed > limit:
        raise SweepBudgetExceeded(needed, limit, what)


def heine_number(k: int, q: int) -> int:
    """Heine (q-deformed) integer ``(q**k - 1) / (q - 1)``; equals ``k`` at ``q == 1``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if q == 1:
        return k
    return (q**k - 1) // (q - 1)


def iterated_length(n: int, ell: int) -> int:
    """Number of arguments consumed by ``ell`` compositions of an ``n``-ary operation."""
    return ell * (n - 1) + 1


class PolyadicSystem:
    arity: int
    finite = False
    asserted: frozenset
    family: str | None
    params: dict

    def apply(self, *args):
        raise NotImplementedError

    def check_element(self, g) -> None:
        raise NotImplementedError

    def close(self, a, b, tol: float | None = None):
        raise NotImplementedError

    def eq(self, a, b, tol: float | None = None) -> bool:
        return bool(np.all(self.close(a, b, tol)))

    def describe(self) -> dict:
        raise NotImplementedError


class FiniteSystem(PolyadicSystem):
    finite = True
    m: int

    def elements(self) -> range:
        return range(self.m)

    def check_element(self, g) -> None:
        if isinstance(g, (bool, np.bool_)) or not isinstance(g, (int, np.integer)):
            raise DomainViolation(f"finite carrier element must be an integer, got {g!r}")
        if not 0 <= g < self.m:
            raise DomainViolation(f"element {g} outside carrier 0..{self.m - 1}")

    def close(self, a, b, tol=None):
        return np.asarray(a) == np.asarray(b)

    @property
    def table_size(self) -> int:
        return self.m**self.arity

    @property
    def table(self) -> np.ndarray:
        raise NotImplementedError

    @property
    def has_table(self) -> bool:
        return self.table_size <= TABLE_LIMIT

    @cached_property
    def flat_table(self) -> np.ndarray:
        return np.ascontiguousarray(self.table.reshape(-1), dtype=np.int64)


@dataclass(frozen=True, eq=False)
class FiniteTable(FiniteSystem):
    """Table-backed n-ary operation; ``table[g_1, ..., g_n]`` is the product."""

    arity: int
    m: int
    data: np.ndarray
    family: str | None = None
    params: dict = field(default_factory=dict)
    asserted: frozenset = frozenset()

    def __post_init__(self):
        if self.arity < 2:
            raise ArityMismatch("arity must be at least 2")
        arr = np.asarray(self.data, dtype=np.int64)
        if arr.size != self.m**self.arity:
            raise ValueError(f"table needs {self.m ** self.arity} entries, got {arr.size}")
        arr = arr.reshape((self.m,) * self.arity)
        if arr.size and (arr.min() < 0 or arr.max() >= self.m):
            raise ValueError("table entries must lie in 0..m-1")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def table(self) -> np.ndarray:
        return self.data

    @property
    def has_table(self) -> bool:
        return True

    def apply(self, *args):
        return self.data[tuple(args)]

    def describe(self) -> dict:
        d = {"kind": "cayley", "n": self.arity, "m": self.m}
        if self.family:
            d["family"] = self.family
            d["params"] = {k: v for k, v in self.params.items() if _jsonable(v)}
        return d


@dataclass(frozen=True, eq=False)
class DerivedModular(FiniteSystem):
    """``mu[g_1..g_n] = g_1 + ... + g_n + c (mod m)``."""

    m: int
    arity: int
    c: int = 0

    family = "derived_modular"
    asserted = frozenset({"totally_associative", "quasigroup", "group"})

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")
        if self.arity < 2:
            raise ArityMismatch("arity must be at least 2")
        if not 0 <= self.c < self.m:
            raise ValueError("c must satisfy 0 <= c < m")

    @property
    def params(self) -> dict:
        return {"m": self.m, "n": self.arity, "c": self.c}

    def apply(self, *args):
        total = self.c
        for a in args:
            total = total + a
        return total % self.m

    @cached_property
    def table(self) -> np.ndarray:
        if self.table_size > TABLE_LIMIT:
            raise SweepBudgetExceeded(self.table_size, TABLE_LIMIT, "table materialization")
        grids = np.indices((self.m,) * self.arity, dtype=np.int64)
        arr = (grids.sum(axis=0) + self.c) % self.m
        arr.setflags(write=False)
        return arr

    def describe(self) -> dict:
        return {"kind": "derived_modular", "m": self.m, "n": self.arity, "c": self.c}


@dataclass(frozen=True, eq=False)
class ClosedForm(PolyadicSystem):
    """Numeric family with a vectorized rule.

    ``rule`` must return NaN where the result leaves the carrier. ``domain`` is a
    vectorized predicate on carrier elements. ``quer_rule``, when present, is the
    family's querelement formula (results are still validated against ``rule``).
    """

    family: str
    arity: int
    rule: Callable
    domain: Callable
    params: dict = field(default_factory=dict)
    tol: float = DEFAULT_TOL
    quer_rule: Callable | None = None
    asserted: frozenset = frozenset()
    samples: tuple = ()
    complex_carrier: bool = False

    def apply(self, *args):
        with np.errstate(all="ignore"):
            return self.rule(*args)

    def check_element(self, g) -> None:
        if isinstance(g, (complex, np.complexfloating)) and not self.complex_carrier:
            raise DomainViolation(f"{self.family}: complex element {g!r} on a real carrier")
        if not bool(self.domain(g)):
            raise DomainViolation(f"{self.family}: element {g!r} outside the domain")

    def valid(self, x):
        """Vectorized membership: not NaN and inside the domain."""
        x = np.asarray(x)
        with np.errstate(all="ignore"):
            ok = ~np.isnan(x) & np.isfinite(x)
            return ok & np.asarray(self.domain(np.where(ok, x, 0)), dtype=bool)

    def close(self, a, b, tol=None):
        return numeric_close(a, b, self.tol if tol is None else tol)

    def describe(self) -> dict:
        return {"kind": "closed_form", "family": self.family,
                "params": {k: v for k, v in self.params.items() if _jsonable(v)}}


def numeric_close(a, b, rtol: float, atol: float = 1e-15):
    a = np.asarray(a)
    b = np.asarray(b)
    with np.errstate(all="ignore"):
        scale = np.maximum(np.abs(a), np.abs(b))
        return np.abs(a - b) <= rtol * scale + atol


def _jsonable(v) -> bool:
    return isinstance(v, (int, float, str, bool, list, tuple)) or v is None


def _finish(sys: PolyadicSystem, value, what: str):
    if sys.finite:
        return int(value)
    if not bool(sys.valid(value)):
        raise DomainViolation(f"{sys.family}: {what} left the domain")
    v = value.item() if isinstance(value, np.generic) else value
    return v


def _check_args(sys: PolyadicSystem, args: Sequence, expected: int) -> None:
    if len(args) != expected:
        raise ArityMismatch(f"expected {expected} arguments, got {len(args)}")
    for a in args:
        sys.check_element(a)


def evaluate(sys: PolyadicSystem, args: Sequence) -> Element:
    """Validated single application ``mu_n[args]``."""
    _check_args(sys, args, sys.arity)
    return _finish(sys, sys.apply(*args), "product")


def fold(sys: PolyadicSystem, ell: int, args: Sequence):
    """Left-nested iterated product without validation; arrays broadcast."""
    n = sys.arity
    acc = sys.apply(*args[:n])
    pos = n
    for _ in range(ell - 1):
        acc = sys.apply(acc, *args[pos:pos + n - 1])
        pos += n - 1
    return acc


def fold_right(sys: PolyadicSystem, ell: int, args: Sequence):
    """Right-nested iterated product ``mu[a_1..a_{n-1}, mu[...]]``."""
    n = sys.arity
    acc = sys.apply(*args[-n:])
    end = len(args) - n
    for _ in range(ell - 1):
        acc = sys.apply(*args[end - (n - 1):end], acc)
        end -= n - 1
    return acc


def iterated_product(sys: PolyadicSystem, ell: int, args: Sequence) -> Element:
    """``ell``-fold composition of ``mu_n``, innermost product leftmost."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    _check_args(sys, args, iterated_length(sys.arity, ell))
    return _finish(sys, fold(sys, ell, args), "iterated product")


def reduced_product(sys: PolyadicSystem, constants: Sequence, positions: Sequence[int],
                    args: Sequence) -> Element:
    """Evaluate with ``constants`` spliced into the 0-based slots ``positions``."""
    n = sys.arity
    if len(constants) != len(positions):
        raise ArityMismatch("one position per constant")
    if len(set(positions)) != len(positions):
        raise PositionOverlap(f"repeated position in {positions!r}")
    if any(not 0 <= p < n for p in positions):
        raise PositionOverlap(f"positions must lie in 0..{n - 1}")
    if len(constants) >= n - 1:
        raise ArityMismatch("at most n-2 constants may be fixed")
    if len(args) != n - len(constants):
        raise ArityMismatch(f"expected {n - len(constants)} free arguments, got {len(args)}")
    slots: list = [None] * n
    for p, c in zip(positions, constants):
        slots[p] = c
    free = iter(args)
    full = [next(free) if s is None else s for s in slots]
    return evaluate(sys, full)


def polyadic_power(sys: PolyadicSystem, g: Element, ell: int) -> Element:
    """Positive polyadic power: ``ell`` multiplications over copies of ``g``."""
    if ell < 0:
        raise ValueError("use negative_polyadic_power for negative exponents")
    sys.check_element(g)
    if ell == 0:
        return g
    return iterated_product(sys, ell, (g,) * iterated_length(sys.arity, ell))


def power_by_recurrence(sys: PolyadicSystem, g: Element, ell: int) -> Element:
    """Same power computed as ``g^<k> = mu[g^(n-1), g^<k-1>]`` (right nesting)."""
    sys.check_element(g)
    acc = g
    head = (g,) * (sys.arity - 1)
    for _ in range(ell):
        acc = sys.apply(*head, acc)
    return _finish(sys, acc, "power") if ell else g
