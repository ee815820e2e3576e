"""Homotopies, homomorphisms and the deformed homomorphism theorem.

A map ``Phi`` between binary retracts that is a binary homomorphism, intertwines
the deformed maps (``Phi(phi_q(g)) = phi'_q(Phi(g))``) and sends ``b_q`` to
``b'_q`` is a homomorphism of the n-ary groups. :func:`theorem_sweep` checks the
implication over whole map spaces at once, vectorized over maps.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._pykernels import _chunks, decode
from .analysis import CheckResult, _plain
from .chain import ChainDecomposition
from .core import PolyadicSystem, require_budget
from .errors import ArityMismatch, DomainViolation, QMismatch, TheoremViolation

EXHAUSTIVE_MAPS = 4**6


@dataclass(frozen=True, eq=False)
class CarrierMap:
    """Total map between carriers: an index table (finite) or a vectorized callable."""

    source: PolyadicSystem
    target: PolyadicSystem
    mapping: np.ndarray | Callable

    def __post_init__(self):
        if self.source.finite:
            arr = np.asarray(self.mapping, dtype=np.int64)
            if arr.shape != (self.source.m,):
                raise ValueError(f"map must list {self.source.m} images")
            if not self.target.finite or arr.min(initial=0) < 0 or arr.max(initial=0) >= self.target.m:
                raise DomainViolation("map image leaves the target carrier")
            arr.setflags(write=False)
            object.__setattr__(self, "mapping", arr)
        elif not callable(self.mapping):
            raise TypeError("numeric maps must be callables")

    def __call__(self, g):
        if isinstance(self.mapping, np.ndarray):
            return self.mapping[g]
        with np.errstate(all="ignore"):
            return self.mapping(g)

    @classmethod
    def identity(cls, sys: PolyadicSystem) -> "CarrierMap":
        if sys.finite:
            return cls(sys, sys, np.arange(sys.m))
        return cls(sys, sys, lambda g: g)


def _tuples(sys: PolyadicSystem, samples, budget):
    n = sys.arity
    if sys.finite:
        require_budget(sys.m**n, budget, "homotopy sweep")
        return list(np.indices((sys.m,) * n).reshape(n, -1))
    pts = np.asarray(samples if samples is not None else sys.samples)
    require_budget(len(pts) ** n, budget, "homotopy grid")
    return [pts[d] for d in decode(np.arange(len(pts) ** n), len(pts), n)]


def check_homotopy(maps, source: PolyadicSystem, target: PolyadicSystem, samples=None,
                   budget: int | None = None) -> CheckResult:
    """``Phi_(n+1)(mu[g]) == mu'[Phi_1(g_1), ..., Phi_n(g_n)]`` on every tuple (or grid)."""
    n = source.arity
    if target.arity != n:
        raise ArityMismatch("source and target arities differ")
    if len(maps) != n + 1:
        raise ArityMismatch(f"a homotopy needs {n + 1} maps")
    t = _tuples(source, samples, budget)
    lhs = maps[n](source.apply(*t))
    rhs = target.apply(*(phi(g) for phi, g in zip(maps[:n], t)))
    if target.finite:
        bad = np.flatnonzero(lhs != rhs)
        evidence, skipped = "exhaustive", 0
    else:
        valid = target.valid(lhs) & target.valid(rhs)
        bad = np.flatnonzero(valid & ~target.close(lhs, rhs))
        evidence, skipped = "sampled", int((~valid).sum())
    if bad.size:
        k = bad[0]
        return CheckResult(False, tuple(_plain(x[k]) for x in t), evidence,
                           {"lhs": _plain(lhs[k]), "rhs": _plain(rhs[k])})
    return CheckResult(True, evidence=evidence, detail={"skipped": skipped} if skipped else {})


def check_homomorphism(phi: CarrierMap, source: PolyadicSystem | None = None,
                       target: PolyadicSystem | None = None, samples=None,
                       budget: int | None = None) -> CheckResult:
    """``Phi(mu[g]) == mu'[Phi(g_1), ..., Phi(g_n)]``."""
    source = source or phi.source
    target = target or phi.target
    return check_homotopy([phi] * (source.arity + 1), source, target, samples, budget)


def compose(outer: CarrierMap, inner: CarrierMap) -> CarrierMap:
    if inner.source.finite:
        return CarrierMap(inner.source, outer.target, outer(inner.mapping))
    return CarrierMap(inner.source, outer.target, lambda g: outer(inner(g)))


@dataclass
class HomomorphismWitness:
    map: CarrierMap
    binary_ok: bool
    phi_compat_ok: bool
    b_compat_ok: bool
    nary_ok: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def premise(self) -> bool:
        return self.binary_ok and self.phi_compat_ok and self.b_compat_ok

    @property
    def consistent(self) -> bool:
        return not self.premise or self.nary_ok

    def to_dict(self) -> dict:
        return {"binary_ok": self.binary_ok, "phi_compat_ok": self.phi_compat_ok,
                "b_compat_ok": self.b_compat_ok, "nary_ok": self.nary_ok,
                "witnesses": _plain(self.witnesses)}


def _points(sys, samples):
    if sys.finite:
        return np.arange(sys.m)
    return np.asarray(samples if samples is not None else sys.samples)


def _first_mismatch(target, lhs, rhs):
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    if target.finite:
        bad = lhs != rhs
    else:
        bad = target.valid(lhs) & target.valid(rhs) & ~target.close(lhs, rhs)
    hits = np.argwhere(bad)
    return None if hits.size == 0 else tuple(int(i) for i in hits[0])


def check_deformed_compatibility(phi: CarrierMap, decomp_s: ChainDecomposition,
                                 decomp_t: ChainDecomposition, samples=None,
                                 strict: bool = True) -> HomomorphismWitness:
    """Check the binary law and both compatibilities, then the n-ary law independently.

    With ``strict`` a passing premise paired with a failing n-ary law raises
    :class:`TheoremViolation`.
    """
    if decomp_s.q != decomp_t.q:
        raise QMismatch(f"q={decomp_s.q} on the source but q={decomp_t.q} on the target")
    if decomp_s.n != decomp_t.n:
        raise ArityMismatch("decompositions have different arities")
    src, tgt = decomp_s.base, decomp_t.base
    pts = _points(src, samples)
    wit = {}
    g, h = pts[:, None], pts[None, :]
    hit = _first_mismatch(tgt, phi(decomp_s.star(g, h)), decomp_t.star(phi(g), phi(h)))
    if hit is not None:
        wit["binary"] = (_plain(pts[hit[0]]), _plain(pts[hit[1]]))
    hit = _first_mismatch(tgt, phi(decomp_s.phi_raw(pts)), decomp_t.phi_raw(phi(pts)))
    if hit is not None:
        wit["phi_compat"] = (_plain(pts[hit[0]]),)
    b_compat = tgt.eq(phi(decomp_s.b_q), decomp_t.b_q)
    if not b_compat:
        wit["b_compat"] = (_plain(decomp_s.b_q),)
    nary = check_homomorphism(phi, src, tgt, samples)
    if not nary.ok:
        wit["nary"] = nary.witness
    out = HomomorphismWitness(phi, "binary" not in wit, "phi_compat" not in wit, b_compat, nary.ok, wit)
    if strict and not out.consistent:
        raise TheoremViolation(f"premise holds but the n-ary law fails at {nary.witness}")
    return out


# ---------------------------------------------------------------- map-space sweep

@dataclass
class SweepReport:
    maps_checked: int
    exhaustive: bool
    binary_ok: int = 0
    premise_ok: int = 0
    nary_ok: int = 0
    counterexamples: list = field(default_factory=list)
    necessity_witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def merge(self, other: "SweepReport") -> None:
        self.binary_ok += other.binary_ok
        self.premise_ok += other.premise_ok
        self.nary_ok += other.nary_ok
        self.counterexamples += other.counterexamples
        self.necessity_witnesses += other.necessity_witnesses

    def to_dict(self) -> dict:
        return _plain({"maps_checked": self.maps_checked, "exhaustive": self.exhaustive,
                       "binary_ok": self.binary_ok, "premise_ok": self.premise_ok,
                       "nary_ok": self.nary_ok, "counterexamples": self.counterexamples[:10],
                       "necessity_witnesses": self.necessity_witnesses[:10], "ok": self.ok})


def _sweep_block(maps, ds, dt, keep):
    src, tgt = ds.base, dt.base
    ms, n = src.m, src.arity
    ar = np.arange(ms)
    star_s, star_t = ds.retract.star_table, dt.retract.star_table
    binary = (maps[:, star_s] == star_t[maps[:, :, None], maps[:, None, :]]).all(axis=(1, 2))
    phi_compat = (maps[:, ds.phi_table[ar]] == dt.phi_table[maps]).all(axis=1)
    b_compat = maps[:, ds.b_q] == dt.b_q
    t = np.indices((ms,) * n).reshape(n, -1)
    mu_s = src.apply(*t)
    nary = (maps[:, mu_s] == tgt.apply(*(maps[:, d] for d in t))).all(axis=1)
    premise = binary & phi_compat & b_compat
    rep = SweepReport(len(maps), False, int(binary.sum()), int(premise.sum()), int(nary.sum()))
    rep.counterexamples = [m.tolist() for m in maps[premise & ~nary][:keep]]
    rep.necessity_witnesses = [m.tolist() for m in maps[binary & ~phi_compat & ~nary][:keep]]
    return rep


def theorem_sweep(decomp_s: ChainDecomposition, decomp_t: ChainDecomposition,
                  max_exhaustive: int = EXHAUSTIVE_MAPS, n_samples: int = 4096,
                  seed: int = 20240611, jobs: int = 1, keep: int = 10) -> SweepReport:
    """Count maps where the premise holds but the n-ary law fails (expect none).

    Every map is enumerated when ``m'^m <= max_exhaustive``; otherwise a seeded
    random sample of ``n_samples`` maps is drawn.
    """
    if decomp_s.q != decomp_t.q:
        raise QMismatch(f"q={decomp_s.q} on the source but q={decomp_t.q} on the target")
    src, tgt = decomp_s.base, decomp_t.base
    if not (src.finite and tgt.finite):
        raise ValueError("map-space sweeps need finite carriers")
    total = tgt.m**src.m
    exhaustive = total <= max_exhaustive
    if exhaustive:
        blocks = [np.stack(decode(idx, tgt.m, src.m), axis=1) for idx in _chunks(total)]
        blocks = [b[i:i + 512] for b in blocks for i in range(0, len(b), 512)]
    else:
        rng = np.random.default_rng(seed)
        sample = rng.integers(0, tgt.m, size=(n_samples, src.m))
        blocks = [sample[i:i + 512] for i in range(0, n_samples, 512)]
    work = lambda b: _sweep_block(b.astype(np.int64), decomp_s, decomp_t, keep)  # noqa: E731
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(work, blocks))
    else:
        parts = [work(b) for b in blocks]
    report = SweepReport(sum(len(b) for b in blocks), exhaustive)
    for p in parts:
        report.merge(p)
    del report.counterexamples[keep:], report.necessity_witnesses[keep:]
    return report
