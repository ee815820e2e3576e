"""Classification predicates and special elements of polyadic systems.

Finite systems are swept exhaustively (subject to the sweep budget); closed-form
systems are checked on sample grids and otherwise rely on flags asserted by their
family. Every result carries an ``evidence`` tag: ``exhaustive``, ``sampled`` or
``asserted``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import product

import numpy as np
from scipy import optimize

from . import kernels
from ._pykernels import _chunks, decode
from .core import (
    ClosedForm,
    FiniteSystem,
    PolyadicSystem,
    fold,
    heine_number,
    polyadic_power,
    require_budget,
    sweep_budget,
)
from .errors import DomainViolation, NonUnique, NoSolution, NotQuerable

MEDIAL_SAMPLES = 20000
SEED = 20240611


@dataclass
class CheckResult:
    ok: bool
    witness: tuple | None = None
    evidence: str = "exhaustive"
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "witness": _plain(self.witness), "evidence": self.evidence,
                "detail": _plain(self.detail)}


def _plain(x):
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    return x


def _grid(sys: ClosedForm, samples=None) -> np.ndarray:
    pts = np.asarray(samples if samples is not None else sys.samples)
    if pts.size == 0:
        raise ValueError(f"{sys.family}: no sample grid available")
    return pts


# ---------------------------------------------------------------- associativity

def _placements(sys, t, n):
    return [sys.apply(*t[:i], sys.apply(*t[i:i + n]), *t[i + n:]) for i in range(n)]


def check_associativity(sys: PolyadicSystem, budget: int | None = None,
                        samples=None) -> CheckResult:
    """Total associativity: all ``n`` placements of the inner product agree."""
    n = sys.arity
    if sys.finite:
        require_budget(sys.m ** (2 * n - 1), budget, "associativity")
        hit = kernels.first_assoc_failure(sys)
        if hit is None:
            return CheckResult(True)
        idx, place = hit
        t = tuple(int(d) for d in decode(idx, sys.m, 2 * n - 1))
        vals = _placements(sys, t, n)
        return CheckResult(False, t, detail={"placements": [0, place],
                                             "values": [int(vals[0]), int(vals[place])]})
    pts = _grid(sys, samples)
    length = 2 * n - 1
    require_budget(len(pts) ** length, budget, "associativity grid")
    skipped = 0
    for idx in _chunks(len(pts) ** length):
        t = [pts[d] for d in decode(idx, len(pts), length)]
        vals = _placements(sys, t, n)
        valid = np.logical_and.reduce([sys.valid(v) for v in vals])
        skipped += int((~valid).sum())
        bad = valid & ~np.logical_and.reduce([sys.close(vals[0], v) for v in vals[1:]])
        hits = np.flatnonzero(bad)
        if hits.size:
            k = hits[0]
            return CheckResult(False, tuple(float(x[k]) for x in t), "sampled",
                               {"values": [complex(v[k]) if np.iscomplexobj(v) else float(v[k])
                                           for v in vals]})
    return CheckResult(True, evidence="sampled", detail={"skipped": skipped})


# ---------------------------------------------------------------- solvability

def _rows(sys: FiniteSystem, i: int) -> np.ndarray:
    """Rows of results as the argument in slot ``i`` runs over the carrier."""
    return np.moveaxis(sys.table, i, -1).reshape(-1, sys.m)


def _row_args(sys: FiniteSystem, i: int, row: int) -> list:
    others = [int(d) for d in decode(row, sys.m, sys.arity - 1)]
    return others[:i] + [None] + others[i:]


def check_solvability(sys: PolyadicSystem, budget: int | None = None) -> list[CheckResult]:
    """Unique ``i``-solvability of ``mu[u, h, t] = g`` for every slot ``i``."""
    n = sys.arity
    if not sys.finite:
        ok = "quasigroup" in sys.asserted
        return [CheckResult(ok, evidence="asserted" if ok else "not asserted") for _ in range(n)]
    require_budget(sys.m**n * n, budget, "solvability")
    out = []
    target = np.arange(sys.m)
    for i in range(n):
        rows = np.sort(_rows(sys, i), axis=1)
        bad = np.flatnonzero((rows != target).any(axis=1))
        if bad.size:
            row = int(bad[0])
            raw = _rows(sys, i)[row]
            missing = int(np.setdiff1d(target, raw)[0])
            out.append(CheckResult(False, tuple(_row_args(sys, i, row)),
                                   detail={"position": i, "unsolvable_target": missing}))
        else:
            out.append(CheckResult(True))
    return out


def check_cancellativity(sys: PolyadicSystem, budget: int | None = None) -> list[CheckResult]:
    """``i``-cancellativity: ``mu`` is injective in slot ``i`` for every fixed rest."""
    n = sys.arity
    if not sys.finite:
        ok = "quasigroup" in sys.asserted
        return [CheckResult(ok, evidence="asserted" if ok else "not asserted") for _ in range(n)]
    require_budget(sys.m**n * n, budget, "cancellativity")
    out = []
    for i in range(n):
        rows = _rows(sys, i)
        srt = np.sort(rows, axis=1)
        dup = (srt[:, 1:] == srt[:, :-1]).any(axis=1)
        bad = np.flatnonzero(dup)
        if bad.size:
            row = int(bad[0])
            vals = rows[row]
            h1, h2 = next((a, b) for a in range(sys.m) for b in range(a + 1, sys.m)
                          if vals[a] == vals[b])
            out.append(CheckResult(False, tuple(_row_args(sys, i, row)),
                                   detail={"position": i, "collision": [h1, h2]}))
        else:
            out.append(CheckResult(True))
    return out


# ---------------------------------------------------------------- solving

def solve_last(sys: PolyadicSystem, prefix, target):
    """The unique ``x`` with ``mu[prefix, x] = target``.

    Finite systems search the carrier (lowest solution, NonUnique on a second one).
    Numeric systems of arity >= 3 cancel the prefix with polyadic inverses; binary
    ones and families without a quer formula fall back to a secant solve.
    """
    n = sys.arity
    if len(prefix) != n - 1:
        raise ValueError("prefix must have n-1 elements")
    if sys.finite:
        vals = sys.apply(*prefix, np.arange(sys.m))
        sols = np.flatnonzero(vals == target)
        if sols.size == 0:
            raise NoSolution(f"no x with mu[{tuple(prefix)}, x] = {target}")
        if sols.size > 1:
            raise NonUnique(f"solutions {sols.tolist()} for mu[{tuple(prefix)}, x] = {target}")
        return int(sols[0])
    x = None
    if n >= 3 and (sys.quer_rule is not None or "group" in sys.asserted):
        try:
            args = []
            for h in reversed(prefix):
                args.extend(_inverse_raw(sys, h))
            args.append(target)
            x = fold(sys, n - 2, args)
            if not bool(sys.valid(x)):
                x = None
        except (NotQuerable, DomainViolation):
            x = None
    if x is None:
        x = _secant(sys, lambda y: sys.apply(*prefix, y), target)
    check = sys.apply(*prefix, x)
    if not (bool(sys.valid(x)) and bool(sys.close(check, target))):
        raise NoSolution(f"{sys.family}: mu[{tuple(prefix)}, x] = {target} has no solution")
    return x.item() if isinstance(x, np.generic) else x


def _secant(sys, f, target):
    x0 = target
    x1 = target + 1e-4 * (1 + abs(target))
    try:
        return optimize.newton(lambda y: f(y) - target, x0, x1=x1, tol=1e-15, maxiter=200)
    except (RuntimeError, OverflowError, ZeroDivisionError, ValueError) as exc:
        raise NoSolution(str(exc)) from exc


def _inverse_raw(sys, g) -> tuple:
    return (g,) * (sys.arity - 3) + (querelement(sys, g),)


# ---------------------------------------------------------------- querelements

def querelement(sys: PolyadicSystem, g):
    """``g_bar`` with ``mu[g^(n-1), g_bar] = g``."""
    sys.check_element(g)
    n = sys.arity
    if sys.finite:
        try:
            return solve_last(sys, (g,) * (n - 1), g)
        except NoSolution as exc:
            raise NotQuerable(str(exc)) from exc
    if sys.quer_rule is not None:
        with np.errstate(all="ignore"):
            q = sys.quer_rule(g)
        if isinstance(q, np.generic):
            q = q.item()
        if not bool(sys.valid(q)):
            raise NotQuerable(f"{sys.family}: quer formula leaves the domain at {g!r}")
    else:
        try:
            q = _secant(sys, lambda y: sys.apply(*(g,) * (n - 1), y), g)
        except NoSolution as exc:
            raise NotQuerable(str(exc)) from exc
        if isinstance(q, np.generic):
            q = q.item()
    if not (bool(sys.valid(q)) and sys.eq(sys.apply(*(g,) * (n - 1), q), g)):
        raise NotQuerable(f"{sys.family}: {g!r} has no querelement")
    return q


def querpower(sys: PolyadicSystem, g, k: int):
    """``k``-fold application of the queroperation; ``k = 0`` gives ``g``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    x = g
    for _ in range(k):
        x = querelement(sys, x)
    return x


def negative_polyadic_power(sys: PolyadicSystem, g, ell: int):
    """``g^<-ell>``: the solution ``x`` of ``mu^ell[g^(ell(n-1)), x] = g``."""
    if ell < 0:
        raise ValueError("ell must be non-negative")
    sys.check_element(g)
    if ell == 0:
        return g
    prev = polyadic_power(sys, g, ell - 1)
    return solve_last(sys, (prev,) + (g,) * (sys.arity - 2), g)


def signed_power(sys: PolyadicSystem, g, ell: int):
    return polyadic_power(sys, g, ell) if ell >= 0 else negative_polyadic_power(sys, g, -ell)


def verify_querpower_identity(sys: PolyadicSystem, g, k_max: int) -> CheckResult:
    """Querpowers against negative powers with Heine exponents at ``q = 2 - n``."""
    q = 2 - sys.arity
    for k in range(k_max + 1):
        lhs = querpower(sys, g, k)
        rhs = signed_power(sys, g, -heine_number(k, q))
        if not sys.eq(lhs, rhs):
            return CheckResult(False, (k,), "exhaustive" if sys.finite else "sampled",
                               {"g": g, "querpower": lhs, "negative_power": rhs})
    return CheckResult(True, evidence="exhaustive" if sys.finite else "sampled")


# ---------------------------------------------------------------- neutral polyads

def _insert(polyad, g, i):
    return tuple(polyad[:i]) + (g,) + tuple(polyad[i:])


def is_neutral(sys: PolyadicSystem, g, polyad) -> bool:
    """``mu[g, polyad] = g`` with ``g`` in every one of the ``n`` slots."""
    if len(polyad) != sys.arity - 1:
        raise ValueError("neutral polyads have n-1 elements")
    return all(sys.eq(sys.apply(*_insert(polyad, g, i)), g) for i in range(sys.arity))


def neutral_polyads(sys: FiniteSystem, budget: int | None = None) -> list[tuple]:
    """All ``(polyad, positions)`` such that the polyad is neutral for every ``g``
    when ``g`` sits in each listed slot; polyads neutral nowhere are omitted."""
    if not sys.finite:
        raise ValueError("neutral polyad enumeration needs a finite carrier")
    n, m = sys.arity, sys.m
    require_budget(m**n * n, budget, "neutral polyads")
    good = []
    g = np.arange(m)[:, None]
    for i in range(n):
        moved = np.moveaxis(sys.table, i, 0).reshape(m, -1)
        good.append((moved == g).all(axis=0))
    out = []
    for row in range(m ** (n - 1)):
        pos = tuple(i for i in range(n) if good[i][row])
        if pos:
            out.append((tuple(int(d) for d in decode(row, m, n - 1)), pos))
    return out


def polyadic_inverse(sys: PolyadicSystem, g, samples=None) -> tuple:
    """``(g^(n-3), g_bar)``, validated as ``mu[g, inv, h] = mu[h, inv, g] = h``."""
    n = sys.arity
    if n < 3:
        raise ValueError("polyadic inverses need arity >= 3")
    inv = _inverse_raw(sys, g)
    hs = sys.elements() if sys.finite else (samples if samples is not None else sys.samples)
    for h in hs:
        left = sys.apply(g, *inv, h)
        right = sys.apply(h, *inv, g)
        if not (sys.eq(left, h) and sys.eq(right, h)):
            raise NotQuerable(f"polyadic inverse of {g!r} fails at h={h!r}")
    return inv


def check_neutral_slots(sys: PolyadicSystem, g) -> CheckResult:
    """``mu[g, n_(g),i] = mu[n_(g),j, g] = g`` for every slot of ``g_bar``."""
    n = sys.arity
    gb = querelement(sys, g)
    for i in range(n - 1):
        neutral = (g,) * i + (gb,) + (g,) * (n - 2 - i)
        for args in ((g,) + neutral, neutral + (g,)):
            if not sys.eq(sys.apply(*args), g):
                return CheckResult(False, args)
    return CheckResult(True, evidence="exhaustive" if sys.finite else "sampled")


# ---------------------------------------------------------------- mediality

def _medial_values(sys, t, n):
    rows = [sys.apply(*t[i * n:(i + 1) * n]) for i in range(n)]
    cols = [sys.apply(*t[j::n]) for j in range(n)]
    return sys.apply(*rows), sys.apply(*cols)


def check_mediality(sys: PolyadicSystem, mode: str = "auto", budget: int | None = None,
                    n_samples: int = MEDIAL_SAMPLES, seed: int = SEED) -> CheckResult:
    """``n x n`` interchange law; ``mode`` is ``exhaustive``, ``sampled`` or ``auto``."""
    n = sys.arity
    if mode not in ("auto", "exhaustive", "sampled"):
        raise ValueError(mode)
    size = (sys.m if sys.finite else len(_grid(sys))) ** (n * n)
    if mode == "exhaustive" or (mode == "auto" and sys.finite and size <= sweep_budget(budget)):
        if not sys.finite:
            raise ValueError("exhaustive mediality needs a finite carrier")
        require_budget(size, budget, "mediality")
        hit = kernels.first_medial_failure(sys)
        if hit is None:
            return CheckResult(True)
        return CheckResult(False, tuple(int(d) for d in decode(hit, sys.m, n * n)))
    rng = np.random.default_rng(seed)
    pts = np.arange(sys.m) if sys.finite else _grid(sys)
    pick = rng.integers(0, len(pts), size=(n_samples, n * n))
    t = [pts[pick[:, j]] for j in range(n * n)]
    lhs, rhs = _medial_values(sys, t, n)
    if sys.finite:
        bad = lhs != rhs
        skipped = 0
    else:
        valid = sys.valid(lhs) & sys.valid(rhs)
        skipped = int((~valid).sum())
        bad = valid & ~sys.close(lhs, rhs)
    hits = np.flatnonzero(bad)
    if hits.size:
        k = hits[0]
        return CheckResult(False, tuple(_plain(x[k]) for x in t), "sampled")
    return CheckResult(True, evidence="sampled", detail={"samples": n_samples, "skipped": skipped})


# ---------------------------------------------------------------- commutativity

def _perm_failure(sys, perm):
    """First tuple ``t`` with ``mu[t] != mu[t permuted by perm]``."""
    n = sys.arity
    if sys.finite:
        tab = sys.table
        bad = np.flatnonzero((tab != np.transpose(tab, perm)).reshape(-1))
        if bad.size:
            return tuple(int(d) for d in decode(int(bad[0]), sys.m, n)), "exhaustive"
        return None, "exhaustive"
    pts = _grid(sys)
    for idx in _chunks(len(pts) ** n):
        t = [pts[d] for d in decode(idx, len(pts), n)]
        a = sys.apply(*t)
        b = sys.apply(*[t[p] for p in perm])
        valid = sys.valid(a) & sys.valid(b)
        hits = np.flatnonzero(valid & ~sys.close(a, b))
        if hits.size:
            return tuple(_plain(x[hits[0]]) for x in t), "sampled"
    return None, "sampled"


def check_commutativity(sys: PolyadicSystem, budget: int | None = None) -> dict:
    """``{"full": ..., "semicommutative": ...}``.

    Full commutativity is tested on the generators of ``S_n`` (one transposition and
    the ``n``-cycle); semicommutativity swaps the first and last slots.
    """
    n = sys.arity
    size = sys.m**n if sys.finite else len(_grid(sys)) ** n
    require_budget(2 * size, budget, "commutativity")
    swap_ends = list(range(n))
    swap_ends[0], swap_ends[-1] = swap_ends[-1], swap_ends[0]
    semi, ev = _perm_failure(sys, swap_ends)
    gens = [[1, 0] + list(range(2, n)), list(range(1, n)) + [0]]
    full = None
    for perm in gens:
        full, _ = _perm_failure(sys, perm)
        if full is not None:
            break
    return {"full": CheckResult(full is None, full, ev),
            "semicommutative": CheckResult(semi is None, semi, ev)}


# ---------------------------------------------------------------- idempotency

def check_idempotency(sys: PolyadicSystem, g, ell: int) -> bool:
    return sys.eq(polyadic_power(sys, g, ell), g)


# ---------------------------------------------------------------- classification

@dataclass
class ClassificationReport:
    arity: int
    totally_associative: bool
    i_solvable: list
    quasigroup: bool
    group: bool
    medial: bool
    semicommutative: bool
    fully_commutative: bool
    cancellative: list
    idempotent: bool
    witnesses: dict = field(default_factory=dict)
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return _plain(asdict(self))


def classify(sys: PolyadicSystem, budget: int | None = None) -> ClassificationReport:
    n = sys.arity
    witnesses: dict = {}
    evidence: dict = {}

    def note(name, res: CheckResult):
        evidence[name] = res.evidence
        if not res.ok and res.witness is not None:
            witnesses[name] = res.witness
        return res.ok

    assoc = note("totally_associative", check_associativity(sys, budget))
    solv = check_solvability(sys, budget)
    for i, r in enumerate(solv):
        note(f"i_solvable[{i}]", r)
    canc = check_cancellativity(sys, budget)
    for i, r in enumerate(canc):
        note(f"cancellative[{i}]", r)
    quasi = all(r.ok for r in solv)
    evidence["quasigroup"] = "exhaustive" if sys.finite else "asserted"
    if not sys.finite and quasi:
        # continuum carriers: back the asserted flag with querability on the grid
        quasi = all(_querable(sys, g) for g in sys.samples)
        evidence["quasigroup"] = "asserted+sampled"
    group = assoc and quasi
    evidence["group"] = evidence["quasigroup"] if sys.finite else "asserted+sampled"
    medial = note("medial", check_mediality(sys, "auto", budget))
    comm = check_commutativity(sys, budget)
    full = note("fully_commutative", comm["full"])
    semi = note("semicommutative", comm["semicommutative"])
    elems = sys.elements() if sys.finite else sys.samples
    idem_fail = next((g for g in elems if not _idempotent_safe(sys, g)), None)
    idem = idem_fail is None
    evidence["idempotent"] = "exhaustive" if sys.finite else "sampled"
    if not idem:
        witnesses["idempotent"] = (_plain(idem_fail),)
    return ClassificationReport(
        arity=n, totally_associative=assoc, i_solvable=[r.ok for r in solv],
        quasigroup=quasi, group=group, medial=medial, semicommutative=semi,
        fully_commutative=full, cancellative=[r.ok for r in canc], idempotent=idem,
        witnesses=witnesses, evidence=evidence)


def _querable(sys, g) -> bool:
    try:
        querelement(sys, g)
        return True
    except (NotQuerable, DomainViolation):
        return False


def _idempotent_safe(sys, g) -> bool:
    try:
        return check_idempotency(sys, g, 1)
    except DomainViolation:
        return False


def all_polyads(m: int, length: int):
    return product(range(m), repeat=length)
