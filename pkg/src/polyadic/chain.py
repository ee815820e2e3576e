"""Retract-automorphism chain decomposition of n-ary groups and its q-deformed family.

Choosing any element ``e`` of an n-ary group yields a binary group
``g * h = mu[g, e^-1, h]`` (the retract) with ``e^-1 = (e^(n-3), e_bar)``. For each
admissible ``q`` the map ``phi_q(g) = mu^(l_phi)[e, g, (e^-1)^q]`` and the element
``b_q = e^<l_e>`` recover the n-ary product as a chain

    mu[g_1, ..., g_n] = g_1 * phi_q^[[1]](g_2) * ... * phi_q^[[n-1]](g_n) * b_q

where ``[[k]]`` are Heine numbers at ``q``. ``q = 1`` is the classical theorem.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import kernels
from ._pykernels import _chunks, decode
from .analysis import (
    CheckResult,
    _plain,
    check_associativity,
    check_solvability,
    querelement,
)
from .core import (
    FiniteTable,
    PolyadicSystem,
    fold,
    heine_number,
    iterated_length,
    polyadic_power,
    power_by_recurrence,
    require_budget,
)
from .errors import (
    ArityMismatch,
    ConstructionNotGroup,
    DomainViolation,
    HypothesisFailed,
    IdentityLawFailed,
    InconsistentDecomposition,
    NoInverse,
    NotAGroup,
    NotQuerable,
)


class QValue(NamedTuple):
    q: int
    ell_phi: int
    ell_e: int


def valid_q_values(n: int, q_max: int) -> list[QValue]:
    """All ``q <= q_max`` for which both multiplication counts are integers."""
    if n < 3 or q_max < 1:
        raise ValueError("need n >= 3 and q_max >= 1")
    out = []
    for q in range(1, q_max + 1):
        phi_num, e_num = q * (n - 2) + 1, heine_number(n, q) - 1
        if phi_num % (n - 1) == 0 and e_num % (n - 1) == 0:
            out.append(QValue(q, phi_num // (n - 1), e_num // (n - 1)))
    return out


def q_integrality_disagreements(n: int, q_max: int) -> list[int]:
    """``q`` values where exactly one of ``l_phi(q)``, ``l_e(q)`` is integral."""
    return [q for q in range(1, q_max + 1)
            if ((q * (n - 2) + 1) % (n - 1) == 0) != ((heine_number(n, q) - 1) % (n - 1) == 0)]


# ---------------------------------------------------------------- retract

@dataclass(frozen=True, eq=False)
class BinaryRetract:
    base: PolyadicSystem
    e: object
    e_inverse: tuple
    star_table: np.ndarray | None = None

    def star(self, g, h):
        """Vectorized ``g * h = mu[g, e^-1, h]``."""
        if self.star_table is not None:
            return self.star_table[g, h]
        return self.base.apply(g, *self.e_inverse, h)


def retract_term(sys: PolyadicSystem, g, e, h):
    """``p(g, e, h) = mu[g, e^-1, h]``."""
    inv = (e,) * (sys.arity - 3) + (querelement(sys, e),)
    return sys.apply(g, *inv, h)


def _require_group(sys: PolyadicSystem, budget) -> None:
    if "group" in sys.asserted:
        return
    assoc = check_associativity(sys, budget)
    if not assoc.ok:
        raise NotAGroup(f"not totally associative, witness {assoc.witness}")
    if sys.finite:
        for i, r in enumerate(check_solvability(sys, budget)):
            if not r.ok:
                raise NotAGroup(f"not uniquely solvable in slot {i}, witness {r.witness}")
    else:
        for g in sys.samples:
            try:
                querelement(sys, g)
            except (NotQuerable, DomainViolation) as exc:
                raise NotAGroup(f"{g!r} is not querable") from exc


def build_retract(sys: PolyadicSystem, e, e_inverse: tuple | None = None,
                  verify: bool = True, budget: int | None = None) -> BinaryRetract:
    """Binary group with identity ``e`` carved out of the n-ary group ``sys``.

    ``e_inverse`` defaults to ``(e^(n-3), e_bar)``; any other polyad completing ``e``
    to a neutral polyad may be passed instead.
    """
    n = sys.arity
    if n < 3:
        raise ArityMismatch("retracts are built from arity >= 3")
    sys.check_element(e)
    if verify:
        _require_group(sys, budget)
    if e_inverse is None:
        try:
            e_inverse = (e,) * (n - 3) + (querelement(sys, e),)
        except NotQuerable as exc:
            raise NotAGroup(str(exc)) from exc
    elif len(e_inverse) != n - 2:
        raise ArityMismatch("e^-1 must have n-2 elements")
    if sys.finite:
        g = np.arange(sys.m)
        star = np.asarray(sys.apply(g[:, None], *e_inverse, g[None, :]), dtype=np.int64)
        star.setflags(write=False)
        if verify:
            _check_binary_group(star, e)
        return BinaryRetract(sys, e, tuple(int(x) for x in e_inverse), star)
    retract = BinaryRetract(sys, e, tuple(e_inverse))
    if verify:
        pts = np.asarray(sys.samples)
        for label, val in (("e*g", retract.star(e, pts)), ("g*e", retract.star(pts, e))):
            ok = sys.valid(val) & sys.close(val, pts)
            if not ok.all():
                bad = float(pts[np.flatnonzero(~ok)[0]])
                raise IdentityLawFailed(f"{label} != g at g={bad}", (bad,))
    return retract


def _check_binary_group(star: np.ndarray, e: int) -> None:
    m = star.shape[0]
    ar = np.arange(m)
    for label, row in (("e*g", star[e, :]), ("g*e", star[:, e])):
        bad = np.flatnonzero(row != ar)
        if bad.size:
            raise IdentityLawFailed(f"{label} != g at g={int(bad[0])}", (int(bad[0]),))
    lhs = star[star[:, :, None], ar[None, None, :]]
    rhs = star[ar[:, None, None], star[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise NotAGroup(f"retract is not associative at {tuple(bad[0])}")
    if not (star == e).any(axis=1).all():
        raise NotAGroup("retract lacks inverses")


def binary_inverse(retract: BinaryRetract, g):
    """``g^-1 = mu[e, g^(n-3), g_bar, e]``, checked against both products."""
    sys = retract.base
    e = retract.e
    n = sys.arity
    inv = sys.apply(e, *(g,) * (n - 3), querelement(sys, g), e)
    if isinstance(inv, np.generic):
        inv = inv.item()
    if not (sys.eq(retract.star(g, inv), e) and sys.eq(retract.star(inv, g), e)):
        raise NoInverse(f"{g!r} has no inverse in the retract")
    return inv


def binary_inverse_table(retract: BinaryRetract) -> np.ndarray:
    """Inverse map of a finite retract read off its star table."""
    return np.argmax(retract.star_table == retract.e, axis=1)


# ---------------------------------------------------------------- decomposition

@dataclass(frozen=True, eq=False)
class ChainDecomposition:
    retract: BinaryRetract
    q: int
    ell_phi: int
    ell_e: int
    b_q: object = None
    a: object = None
    phi_table: np.ndarray | None = field(default=None, repr=False)

    @property
    def base(self) -> PolyadicSystem:
        return self.retract.base

    @property
    def e(self):
        return self.retract.e

    @property
    def n(self) -> int:
        return self.base.arity

    def star(self, g, h):
        return self.retract.star(g, h)

    def phi_raw(self, g):
        """Vectorized ``phi_q`` without validation."""
        if self.phi_table is not None:
            return self.phi_table[g]
        r = self.retract
        return fold(self.base, self.ell_phi, (r.e, g) + r.e_inverse * self.q)

    def phi_power_raw(self, g, k: int):
        if self.phi_table is not None:
            return self.phi_power_table(k)[g]
        for _ in range(k):
            g = self.phi_raw(g)
        return g

    def phi_power_table(self, k: int) -> np.ndarray:
        return _table_power(self.phi_table, k)

    @cached_property
    def exponents(self) -> list[int]:
        """``[[i]]_q`` for ``i = 0..n-1``: the phi exponent applied to each argument."""
        return [heine_number(i, self.q) for i in range(self.n)]

    def to_dict(self) -> dict:
        return {"q": self.q, "ell_phi": self.ell_phi, "ell_e": self.ell_e,
                "e": _plain(self.e), "e_inverse": _plain(list(self.retract.e_inverse)),
                "b_q": _plain(self.b_q), "a": _plain(self.a)}


def _table_power(table: np.ndarray, k: int) -> np.ndarray:
    result = np.arange(table.size)
    base = table
    while k:
        if k & 1:
            result = base[result]
        base = base[base]
        k >>= 1
    return result


def decompose(sys: PolyadicSystem, e, q: int = 1, retract: BinaryRetract | None = None,
              budget: int | None = None) -> ChainDecomposition:
    """Chain data ``(*, phi_q, l_phi, l_e, b_q, a)`` for one admissible ``q``."""
    n = sys.arity
    if retract is None:
        retract = build_retract(sys, e, budget=budget)
    match = [v for v in valid_q_values(n, q) if v.q == q]
    if not match:
        raise ValueError(f"q={q} is not admissible for n={n}: (q(n-2)+1)/(n-1) is not an integer")
    _, ell_phi, ell_e = match[0]
    phi_table = None
    if sys.finite:
        g = np.arange(sys.m)
        phi_table = np.asarray(fold(sys, ell_phi, (retract.e, g) + retract.e_inverse * q),
                               dtype=np.int64)
        phi_table.setflags(write=False)
    dec = ChainDecomposition(retract, q, ell_phi, ell_e, phi_table=phi_table)
    b_q = distinguished_element(dec)
    a = phi_q(dec, retract.e)
    object.__setattr__(dec, "b_q", b_q)
    object.__setattr__(dec, "a", a)
    return dec


def _scalar(sys, value, what):
    if sys.finite:
        return int(value)
    if not bool(sys.valid(value)):
        raise DomainViolation(f"{sys.family}: {what} left the domain")
    return value.item() if isinstance(value, np.generic) else value


def phi_q(decomp: ChainDecomposition, g):
    """``phi_q(g) = mu^(l_phi)[e, g, (e^-1)^q]``."""
    decomp.base.check_element(g)
    return _scalar(decomp.base, decomp.phi_raw(g), "phi_q")


def iterate_phi(decomp: ChainDecomposition, g, k: int):
    """``phi_q`` composed ``k`` times."""
    if k < 0:
        raise ValueError("k must be non-negative")
    decomp.base.check_element(g)
    return _scalar(decomp.base, decomp.phi_power_raw(g, k), "phi_q power") if k else g


def distinguished_element(decomp: ChainDecomposition):
    """``b_q``: the ``l_e``-th power of ``e`` and the product of ``[[n]]_q`` copies of ``e``.

    Both are computed (right- and left-nested respectively) and must agree.
    """
    sys = decomp.base
    e = decomp.e
    count = heine_number(sys.arity, decomp.q)
    if count != iterated_length(sys.arity, decomp.ell_e):
        raise InconsistentDecomposition(f"[[n]]_q = {count} does not match l_e = {decomp.ell_e}")
    by_power = power_by_recurrence(sys, e, decomp.ell_e)
    by_count = _scalar(sys, fold(sys, decomp.ell_e, (e,) * count), "b_q")
    if not sys.eq(by_power, by_count):
        raise InconsistentDecomposition(f"e^<l_e> = {by_power!r} but product of copies = {by_count!r}")
    return by_count


def chain_raw(decomp: ChainDecomposition, args):
    acc = args[0]
    for i in range(1, decomp.n):
        acc = decomp.star(acc, decomp.phi_power_raw(args[i], decomp.exponents[i]))
    return decomp.star(acc, decomp.b_q)


def chain_evaluate(decomp: ChainDecomposition, args):
    """``M_q(g_1..g_n) = g_1 * phi^[[1]](g_2) * ... * phi^[[n-1]](g_n) * b_q``."""
    sys = decomp.base
    if len(args) != sys.arity:
        raise ArityMismatch(f"expected {sys.arity} arguments, got {len(args)}")
    for a in args:
        sys.check_element(a)
    return _scalar(sys, chain_raw(decomp, args), "chain product")


def chain_bracketing_agrees(decomp: ChainDecomposition, args) -> bool:
    """Right-folded chain equals the left-folded one (retract associativity)."""
    sys = decomp.base
    terms = [decomp.phi_power_raw(a, k) for a, k in zip(args, decomp.exponents)]
    terms.append(decomp.b_q)
    acc = terms[-1]
    for t in reversed(terms[:-1]):
        acc = decomp.star(t, acc)
    return sys.eq(acc, chain_raw(decomp, args))


# ---------------------------------------------------------------- invariance

def _psi_tables(decomp: ChainDecomposition) -> np.ndarray:
    return np.stack([decomp.phi_power_table(k) for k in decomp.exponents])


def check_chain(decomp: ChainDecomposition, budget: int | None = None, samples=None,
                tol: float | None = None) -> CheckResult:
    """``M_q == mu_n`` on every n-tuple (finite) or on a sample grid (numeric)."""
    sys = decomp.base
    n = sys.arity
    if sys.finite:
        require_budget(sys.m**n, budget, "chain invariance")
        hit = kernels.first_chain_failure(sys, decomp.retract.star_table, _psi_tables(decomp),
                                          decomp.b_q)
        if hit is None:
            return CheckResult(True, detail={"checked": sys.m**n})
        t = tuple(int(d) for d in decode(hit, sys.m, n))
        return CheckResult(False, t, detail={"mu": int(sys.apply(*t)),
                                             "chain": int(chain_raw(decomp, t))})
    pts = np.asarray(samples if samples is not None else sys.samples)
    require_budget(len(pts) ** n, budget, "chain invariance grid")
    checked = skipped = 0
    for idx in _chunks(len(pts) ** n):
        t = [pts[d] for d in decode(idx, len(pts), n)]
        ref = sys.apply(*t)
        val = chain_raw(decomp, t)
        valid = sys.valid(ref) & sys.valid(val)
        skipped += int((~valid).sum())
        checked += int(valid.sum())
        bad = np.flatnonzero(valid & ~sys.close(ref, val, tol))
        if bad.size:
            k = bad[0]
            return CheckResult(False, tuple(float(x[k]) for x in t), "sampled",
                               {"mu": float(ref[k]), "chain": float(val[k])})
    return CheckResult(True, evidence="sampled", detail={"checked": checked, "skipped": skipped})


@dataclass
class InvarianceReport:
    e: object
    entries: list

    @property
    def ok(self) -> bool:
        return all(x["pass"] is not False for x in self.entries) and any(
            x["pass"] for x in self.entries if x["q"] > 0)

    def to_dict(self) -> dict:
        return {"e": _plain(self.e), "ok": self.ok, "entries": _plain(self.entries)}


def verify_invariance(sys: PolyadicSystem, e, q_max: int = 9, budget: int | None = None,
                      jobs: int = 1, samples=None, tol: float | None = None) -> InvarianceReport:
    """Check ``M_q == mu_n`` for ``q = 0`` and every admissible ``q <= q_max``.

    An entry whose decomposition data leaves a numeric domain is reported with
    ``pass = None`` and the reason, not as a failure.
    """
    retract = build_retract(sys, e, budget=budget)

    def one(v: QValue) -> dict:
        entry = {"q": v.q, "ell_phi": v.ell_phi, "ell_e": v.ell_e}
        try:
            dec = decompose(sys, e, v.q, retract=retract)
        except DomainViolation as exc:
            entry.update({"b_q": None, "pass": None, "skipped_reason": str(exc)})
            return entry
        res = check_chain(dec, budget, samples, tol)
        entry.update({"b_q": _plain(dec.b_q), "pass": res.ok, "evidence": res.evidence,
                      **res.detail})
        if not res.ok:
            entry["witness"] = res.witness
        return entry

    qs = valid_q_values(sys.arity, q_max)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(one, qs))
    else:
        entries = [one(v) for v in qs]
    zero = {"q": 0, "ell_phi": None, "ell_e": None, "b_q": None, "pass": True,
            "evidence": "definition"}
    return InvarianceReport(e, [zero] + entries)


# ---------------------------------------------------------------- deformed identities

def _domain_points(decomp, samples):
    sys = decomp.base
    if sys.finite:
        return np.arange(sys.m)
    return np.asarray(samples if samples is not None else sys.samples)


def _identity_check(decomp, lhs, rhs, points, shape_witness) -> CheckResult:
    sys = decomp.base
    if sys.finite:
        bad = np.argwhere(np.asarray(lhs) != np.asarray(rhs))
        if bad.size:
            return CheckResult(False, shape_witness(bad[0]))
        return CheckResult(True)
    valid = sys.valid(lhs) & sys.valid(rhs)
    bad = np.argwhere(valid & ~sys.close(lhs, rhs))
    if bad.size:
        return CheckResult(False, shape_witness(bad[0]), "sampled")
    return CheckResult(True, evidence="sampled", detail={"skipped": int((~valid).sum())})


def check_quasi_endomorphism(decomp: ChainDecomposition, samples=None) -> CheckResult:
    """``phi(g) * phi(h) == phi(g * a * h)`` with ``a = phi(e)``; at ``q = 1`` also ``a == e``."""
    sys = decomp.base
    pts = _domain_points(decomp, samples)
    g, h = pts[:, None], pts[None, :]
    lhs = decomp.star(decomp.phi_raw(g), decomp.phi_raw(h))
    rhs = decomp.phi_raw(decomp.star(decomp.star(g, decomp.a), h))
    res = _identity_check(decomp, lhs, rhs, pts,
                          lambda ij: (_plain(pts[ij[0]]), _plain(pts[ij[1]])))
    if res.ok and decomp.q == 1 and not sys.eq(decomp.a, decomp.e):
        return CheckResult(False, (_plain(decomp.e),), res.evidence, {"phi(e)": _plain(decomp.a)})
    return res


def check_quasi_fixed_point(decomp: ChainDecomposition) -> CheckResult:
    """``phi(b_q) == b_q * phi(e)``."""
    sys = decomp.base
    lhs = decomp.phi_raw(decomp.b_q)
    rhs = decomp.star(decomp.b_q, decomp.a)
    ok = bool(sys.valid(lhs)) if not sys.finite else True
    ok = ok and sys.eq(lhs, rhs)
    return CheckResult(ok, None if ok else (_plain(decomp.b_q),),
                       "exhaustive" if sys.finite else "sampled",
                       {"phi(b)": _plain(lhs), "b*a": _plain(rhs)})


def check_quasi_conjugation(decomp: ChainDecomposition, samples=None) -> CheckResult:
    """``phi^[[n-1]](g) * b_q == b_q * phi^[[n-1]](e) * g`` for every ``g``."""
    k = heine_number(decomp.n - 1, decomp.q)
    pts = _domain_points(decomp, samples)
    lhs = decomp.star(decomp.phi_power_raw(pts, k), decomp.b_q)
    rhs = decomp.star(decomp.star(decomp.b_q, decomp.phi_power_raw(decomp.e, k)), pts)
    return _identity_check(decomp, lhs, rhs, pts, lambda i: (_plain(pts[i[0]]),))


def check_fixed_powers(decomp: ChainDecomposition, k_max: int = 3) -> CheckResult:
    """``q = 1``: every power ``e^<k>`` (``k <= k_max``) is fixed by ``phi``."""
    sys = decomp.base
    for k in range(k_max + 1):
        ek = polyadic_power(sys, decomp.e, k)
        if not sys.eq(decomp.phi_raw(ek), ek):
            return CheckResult(False, (k,), detail={"e^<k>": _plain(ek)})
    return CheckResult(True)


def _inverse_raw(decomp, x):
    sys = decomp.base
    if sys.finite:
        return int(binary_inverse_table(decomp.retract)[x])
    return binary_inverse(decomp.retract, x)


def check_conjugation(decomp: ChainDecomposition, samples=None) -> CheckResult:
    """``q = 1``: ``phi^(n-1)(g) == e^<1> * g * (e^<1>)^-1``."""
    return _conjugation_by_power(decomp, decomp.n - 1, 1, samples)


def check_even_conjugation(decomp: ChainDecomposition, k_max: int = 3, samples=None) -> CheckResult:
    """``n = 3, q = 1``: ``phi^(2k)(g) == e^<k> * g * (e^<k>)^-1`` for ``k <= k_max``."""
    if decomp.n != 3:
        raise ValueError("even-power conjugation is stated for ternary groups")
    for k in range(1, k_max + 1):
        res = _conjugation_by_power(decomp, 2 * k, k, samples)
        if not res.ok:
            res.detail["k"] = k
            return res
    return CheckResult(True, evidence="exhaustive" if decomp.base.finite else "sampled")


def _conjugation_by_power(decomp, phi_exp, power, samples):
    sys = decomp.base
    ek = polyadic_power(sys, decomp.e, power)
    ek_inv = _inverse_raw(decomp, ek)
    pts = _domain_points(decomp, samples)
    lhs = decomp.phi_power_raw(pts, phi_exp)
    rhs = decomp.star(decomp.star(ek, pts), ek_inv)
    return _identity_check(decomp, lhs, rhs, pts, lambda i: (_plain(pts[i[0]]),))


# ---------------------------------------------------------------- homotopy maps

def extended_homotopy_maps(decomp: ChainDecomposition) -> list:
    """``psi_1..psi_(n+1)``: ``psi_i = phi^[[i-1]]``, ``psi_(n+1)(g)`` = product of ``[[n]]_q`` copies."""
    sys = decomp.base
    maps = [(lambda g, k=k: decomp.phi_power_raw(g, k)) for k in decomp.exponents]
    count = heine_number(sys.arity, decomp.q)
    maps.append(lambda g: fold(sys, decomp.ell_e, (g,) * count))
    return maps


def check_extended_homotopy(decomp: ChainDecomposition, tuples) -> CheckResult:
    """``mu[g] == (psi_1(g_1) * ... * psi_n(g_n)) * psi_(n+1)(e)`` on the given tuples."""
    sys = decomp.base
    psi = extended_homotopy_maps(decomp)
    tail = psi[-1](decomp.e)
    for t in tuples:
        acc = psi[0](t[0])
        for i in range(1, sys.arity):
            acc = decomp.star(acc, psi[i](t[i]))
        acc = decomp.star(acc, tail)
        if not sys.eq(acc, sys.apply(*t)):
            return CheckResult(False, tuple(_plain(x) for x in t))
    return CheckResult(True, evidence="exhaustive" if sys.finite else "sampled")


# ---------------------------------------------------------------- reverse theorem

def _binary_identity(binary: np.ndarray) -> int:
    m = binary.shape[0]
    ar = np.arange(m)
    for e in range(m):
        if (binary[e, :] == ar).all() and (binary[:, e] == ar).all():
            return e
    raise NotAGroup("binary table has no identity")


def reverse_construct(binary, phi, b: int, n: int, budget: int | None = None) -> FiniteTable:
    """n-ary group ``mu[g] = g_1 * phi(g_2) * ... * phi^(n-1)(g_n) * b`` from binary data.

    Requires a binary group, an automorphism ``phi`` with ``phi^(n-1)(g) = b g b^-1``
    and ``phi(b) = b``. The result is classified and ``b == e^<1>`` is confirmed.
    """
    B = np.asarray(binary, dtype=np.int64)
    m = B.shape[0]
    if B.shape != (m, m) or B.min() < 0 or B.max() >= m:
        raise ValueError("binary table must be m x m over 0..m-1")
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (m,):
        raise ValueError("phi must list m images")
    if n < 2:
        raise ArityMismatch("n must be at least 2")
    if not 0 <= b < m:
        raise ValueError("b outside the carrier")
    e = _binary_identity(B)
    _check_binary_group(B, e)
    inv = np.argmax(B == e, axis=1)
    ar = np.arange(m)
    if np.unique(phi).size != m:
        raise HypothesisFailed("automorphism", ("not bijective",))
    bad = np.argwhere(phi[B] != B[phi[:, None], phi[None, :]])
    if bad.size:
        raise HypothesisFailed("automorphism", tuple(int(x) for x in bad[0]))
    conj = B[B[b, ar], inv[b]]
    bad = np.flatnonzero(_table_power(phi, n - 1) != conj)
    if bad.size:
        raise HypothesisFailed("conjugation", (int(bad[0]),))
    if phi[b] != b:
        raise HypothesisFailed("fixed_b", (b,))
    grids = np.indices((m,) * n, dtype=np.int64)
    acc = grids[0]
    for i in range(1, n):
        acc = B[acc, _table_power(phi, i)[grids[i]]]
    acc = B[acc, b]
    sys = FiniteTable(n, m, acc, family="reverse",
                      params={"b": int(b), "phi": phi.tolist(), "binary_identity": e})
    try:
        _require_group(sys, budget)
    except NotAGroup as exc:
        raise ConstructionNotGroup(str(exc)) from exc
    if polyadic_power(sys, e, 1) != b:
        raise ConstructionNotGroup(f"e^<1> = {polyadic_power(sys, e, 1)} differs from b = {b}")
    return sys

