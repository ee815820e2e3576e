"""Built-in parametric families with closed-form reference formulas.

Families: ``qadd`` (polyadic q-addition), ``copula`` (ternary copula product),
``qprod`` (ternary q-product), ``binary_center`` (n-fold binary product times a
central element) and ``derived_modular``. :func:`reference_check` compares the
engine against each family's closed forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .analysis import _plain, negative_polyadic_power, querelement, querpower
from .core import ClosedForm, DerivedModular, FiniteTable, PolyadicSystem, heine_number, polyadic_power
from .errors import DomainViolation, InvalidParams, NoSolution, NotQuerable

FAMILIES = ("qadd", "copula", "qprod", "binary_center", "derived_modular")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)


def instantiate(spec: FamilySpec) -> PolyadicSystem:
    builders = {"qadd": qadd, "copula": copula, "qprod": qprod,
                "binary_center": binary_center, "derived_modular": derived_modular}
    if spec.family not in builders:
        raise InvalidParams(f"unknown family {spec.family!r}; choose from {', '.join(FAMILIES)}")
    try:
        return builders[spec.family](**spec.params)
    except TypeError as exc:
        raise InvalidParams(f"{spec.family}: {exc}") from exc


# ---------------------------------------------------------------- q-addition

def qadd_samples(n: int, hbar: float, count: int = 25) -> tuple:
    grid = np.linspace(-1.2, 1.2, count)
    keep = (np.abs(grid) >= 0.2) & (np.abs(1 + hbar * grid ** (n - 1)) >= 0.1)
    return tuple(float(x) for x in grid[keep])


def qadd(n: int = 3, hbar: float = 0.5, complex_carrier: bool = False) -> ClosedForm:
    """``mu[g] = sum(g) + hbar * prod(g)``; group status is not asserted."""
    if hbar == 0:
        raise InvalidParams("qadd: hbar must be nonzero")
    if n < 2:
        raise InvalidParams("qadd: n must be at least 2")

    def rule(*g):
        total, prod = 0, 1
        for x in g:
            total = total + x
            prod = prod * x
        return total + hbar * prod

    def domain(x):
        return np.isfinite(x) if complex_carrier else np.isfinite(x) & np.isreal(x)

    return ClosedForm("qadd", n, rule, domain,
                      params={"n": n, "hbar": hbar, "complex": complex_carrier},
                      samples=qadd_samples(n, hbar), complex_carrier=complex_carrier)


def qadd_power(g, n: int, hbar: float, k: int):
    a = (n - 1) / hbar
    return g * (1 + a * g ** (1 - n)) * (1 + hbar * g ** (n - 1)) ** k - a * g ** (2 - n)


def qadd_quer(g, n: int, hbar: float):
    return -(n - 2) * g / (1 + hbar * g ** (n - 1))


# ---------------------------------------------------------------- copula

COPULA_SAMPLES = tuple((np.arange(20) + 0.5) / 20)


def _copula_rule(g, h, u):
    g, h, u = np.asarray(g, float), np.asarray(h, float), np.asarray(u, float)
    inside = (g >= 0) & (g <= 1) & (h >= 0) & (h <= 1) & (u >= 0) & (u <= 1)
    num = g * (1 - h) * u
    den = num + (1 - g) * h * (1 - u)
    val = np.where(den == 0, 0.0, num / np.where(den == 0, 1.0, den))
    out = np.where(inside, val, np.nan)
    return out[()] if out.ndim == 0 else out


def copula() -> ClosedForm:
    """Ternary copula product on [0, 1]; ``0/0`` is read as 0."""
    return ClosedForm("copula", 3, _copula_rule, lambda x: (x >= 0) & (x <= 1),
                      quer_rule=lambda g: g,
                      asserted=frozenset({"totally_associative", "quasigroup", "group"}),
                      samples=COPULA_SAMPLES)


def copula_phi(g, e):
    return e * e * (1 - g) / (e * e - 2 * g * e + g)


# ---------------------------------------------------------------- q-product

def qprod_samples(hbar: float, offset: float = 3.0, count: int = 10) -> tuple:
    big = np.linspace(1.05, 1.6, count) * offset / 3
    with np.errstate(over="ignore"):
        pts = big ** (1 / hbar)
    pts = pts[np.isfinite(pts)]
    if pts.size < 3:
        pts = np.geomspace(1.5, 4.0, count)
    return tuple(float(x) for x in pts)


def qprod(hbar: float = 0.5, offset: float = 3.0) -> ClosedForm:
    """``mu[g,t,u] = (g^hbar + t^hbar + u^hbar - offset)^(1/hbar)`` on positive reals."""
    if not 0 < hbar < 1:
        raise InvalidParams("qprod: need 0 < hbar < 1")

    def root(s):
        s = np.asarray(s, float)
        out = np.where(s > 0, np.abs(s) ** (1 / hbar), np.nan)
        return out[()] if out.ndim == 0 else out

    def rule(g, t, u):
        g, t, u = np.asarray(g, float), np.asarray(t, float), np.asarray(u, float)
        ok = (g > 0) & (t > 0) & (u > 0)
        pw = lambda x: np.abs(x) ** hbar  # noqa: E731
        return np.where(ok, root(pw(g) + pw(t) + pw(u) - offset), np.nan)[()]

    return ClosedForm("qprod", 3, rule, lambda x: x > 0,
                      params={"hbar": hbar, "offset": offset},
                      quer_rule=lambda g: root(offset - np.asarray(g, float) ** hbar),
                      asserted=frozenset({"totally_associative", "quasigroup", "group"}),
                      samples=qprod_samples(hbar, offset))


def qprod_reference(hbar: float, offset: float = 3.0) -> dict:
    """Closed forms of the q=3 decomposition data, in terms of ``g`` and ``e``."""
    r = lambda s: np.where(s > 0, np.abs(s) ** (1 / hbar), np.nan)  # noqa: E731
    return {
        "quer": lambda g: r(offset - g**hbar),
        "star": lambda g, t, e: r(g**hbar - e**hbar + t**hbar),
        "phi3": lambda g, e: r(g**hbar - 2 * e**hbar + offset),
        "phi3_4": lambda g, e: r(g**hbar - 8 * e**hbar + 4 * offset),
        "b3": lambda e: r(13 * e**hbar - 6 * offset),
        "mu": lambda g, t, u: r(g**hbar + t**hbar + u**hbar - offset),
    }


# ---------------------------------------------------------------- finite binary groups

def cyclic_table(m: int) -> np.ndarray:
    ar = np.arange(m)
    return (ar[:, None] + ar[None, :]) % m


def multiplicative_table(p: int) -> np.ndarray:
    """Units mod prime ``p``; index ``i`` stands for the residue ``i + 1``."""
    v = np.arange(1, p)
    return (v[:, None] * v[None, :]) % p - 1


def symmetric3_table() -> np.ndarray:
    """S3 under composition ``(a*b)(x) = a(b(x))``; index 0 is the identity."""
    perms = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    return np.array([[index[tuple(a[b[x]] for x in range(3))] for b in perms] for a in perms])


def _binary_identity(B: np.ndarray) -> int:
    ar = np.arange(B.shape[0])
    for e in ar:
        if (B[e] == ar).all() and (B[:, e] == ar).all():
            return int(e)
    raise InvalidParams("binary_center: table has no identity")


def binary_power(B: np.ndarray, g: int, k: int) -> int:
    e = _binary_identity(B)
    if k < 0:
        g, k = int(np.argmax(B[g] == e)), -k
    acc = e
    for _ in range(k):
        acc = int(B[acc, g])
    return acc


def binary_center(table=None, c: int = 1, n: int = 4) -> FiniteTable:
    """``mu[g_1..g_n] = g_1 g_2 ... g_n c`` for a binary group table and central ``c``.

    The default table is the unit group mod 7 (index ``i`` is residue ``i + 1``),
    so ``c = 1`` is the residue 2.
    """
    B = multiplicative_table(7) if table is None else np.asarray(table, dtype=np.int64)
    m = B.shape[0]
    if B.shape != (m, m):
        raise InvalidParams("binary_center: table must be square")
    if not 0 <= c < m:
        raise InvalidParams("binary_center: c outside the carrier")
    if n < 2:
        raise InvalidParams("binary_center: n must be at least 2")
    _binary_identity(B)
    bad = np.flatnonzero(B[c, :] != B[:, c])
    if bad.size:
        raise InvalidParams(f"binary_center: c={c} is not central (fails against {int(bad[0])})")
    grids = np.indices((m,) * n, dtype=np.int64)
    acc = grids[0]
    for i in range(1, n):
        acc = B[acc, grids[i]]
    return FiniteTable(n, m, B[acc, c], family="binary_center",
                       params={"c": int(c), "n": n, "binary": B.tolist()})


def derived_modular(m: int = 5, n: int = 3, c: int = 0) -> DerivedModular:
    if m < 1 or n < 2 or not 0 <= c < m:
        raise InvalidParams("derived_modular: need m >= 1, n >= 2, 0 <= c < m")
    return DerivedModular(m, n, c)


# ---------------------------------------------------------------- reference oracles

@dataclass
class ReferenceReport:
    family: str
    which: str
    checked: int = 0
    skipped: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.checked > 0

    def to_dict(self) -> dict:
        return _plain({"family": self.family, "which": self.which, "checked": self.checked,
                       "skipped": self.skipped, "mismatches": self.mismatches[:20], "ok": self.ok})


REL_TOL = 1e-10
K_MAX = 4


def _close(a, b, tol=REL_TOL):
    return abs(a - b) <= tol * max(abs(a), abs(b)) + 1e-14


def _compare(report, label, engine_fn, oracle_fn, exact):
    try:
        got = engine_fn()
        want = oracle_fn()
    except (DomainViolation, NotQuerable, NoSolution, ZeroDivisionError, OverflowError):
        report.skipped += 1
        return
    if not exact and not (np.isfinite(got) and np.isfinite(want)):
        report.skipped += 1
        return
    report.checked += 1
    if not (got == want if exact else _close(got, want)):
        report.mismatches.append({"at": label, "engine": got, "reference": want})


def reference_check(sys: PolyadicSystem, which: str, samples=None, k_max: int | None = None
                    ) -> ReferenceReport:
    """Compare engine values with the family's closed forms; mismatches are listed."""
    fam = getattr(sys, "family", None)
    handler = _HANDLERS.get((fam, which))
    if handler is None:
        raise ValueError(f"no {which!r} reference for family {fam!r}")
    report = ReferenceReport(fam, which)
    pts = list(samples) if samples is not None else (
        list(sys.elements()) if sys.finite else list(sys.samples))
    handler(sys, pts, report, k_max)
    return report


def _qadd_power(sys, pts, rep, k_max):
    n, hbar = sys.arity, sys.params["hbar"]
    for g in pts:
        for k in range(1, (k_max or 6) + 1):
            _compare(rep, (g, k), lambda: polyadic_power(sys, g, k),
                     lambda: qadd_power(g, n, hbar, k), False)


def _qadd_quer(sys, pts, rep, k_max):
    n, hbar = sys.arity, sys.params["hbar"]
    for g in pts:
        _compare(rep, (g,), lambda: querelement(sys, g), lambda: qadd_quer(g, n, hbar), False)


def _copula_quer(sys, pts, rep, k_max):
    for g in pts:
        _compare(rep, (g,), lambda: querelement(sys, g), lambda: g, False)


def _copula_phi(sys, pts, rep, k_max):
    from .chain import decompose, iterate_phi

    for e in pts[::3]:
        dec = decompose(sys, e, 1)
        for g in pts:
            _compare(rep, (g, e, 1), lambda: iterate_phi(dec, g, 1), lambda: copula_phi(g, e), False)
            for k in range(1, (k_max or 2) + 1):
                _compare(rep, (g, e, 2 * k), lambda: iterate_phi(dec, g, 2 * k), lambda: g, False)
                _compare(rep, (g, e, 2 * k + 1), lambda: iterate_phi(dec, g, 2 * k + 1),
                         lambda: copula_phi(g, e), False)


def _qprod_quer(sys, pts, rep, k_max):
    ref = qprod_reference(sys.params["hbar"], sys.params["offset"])
    for g in pts:
        _compare(rep, (g,), lambda: querelement(sys, g), lambda: float(ref["quer"](g)), False)


def _qprod_phi(sys, pts, rep, k_max):
    from .chain import decompose, iterate_phi

    ref = qprod_reference(sys.params["hbar"], sys.params["offset"])
    for e in pts[::3]:
        try:
            dec = decompose(sys, e, 3)
        except DomainViolation:
            rep.skipped += 1
            continue
        _compare(rep, (e, "b3"), lambda: dec.b_q, lambda: float(ref["b3"](e)), False)
        for g in pts:
            _compare(rep, (g, e, 1), lambda: iterate_phi(dec, g, 1),
                     lambda: float(ref["phi3"](g, e)), False)
            _compare(rep, (g, e, 4), lambda: iterate_phi(dec, g, 4),
                     lambda: float(ref["phi3_4"](g, e)), False)


def _center_parts(sys):
    B = np.asarray(sys.params["binary"])
    return B, sys.params["c"], sys.arity


def _bc_power(sys, pts, rep, k_max):
    B, c, n = _center_parts(sys)
    for g in pts:
        for k in range(1, (k_max or K_MAX) + 1):
            _compare(rep, (g, k), lambda: polyadic_power(sys, g, k),
                     lambda: int(B[binary_power(B, g, k * (n - 1) + 1), binary_power(B, c, k)]), True)


def _bc_negpower(sys, pts, rep, k_max):
    B, c, n = _center_parts(sys)
    for g in pts:
        for k in range(1, (k_max or K_MAX) + 1):
            _compare(rep, (g, k), lambda: negative_polyadic_power(sys, g, k),
                     lambda: int(B[binary_power(B, g, 1 - k * (n - 1)), binary_power(B, c, -k)]), True)


def _bc_quer(sys, pts, rep, k_max):
    B, c, n = _center_parts(sys)
    for g in pts:
        _compare(rep, (g,), lambda: querelement(sys, g),
                 lambda: int(B[binary_power(B, g, 2 - n), binary_power(B, c, -1)]), True)


def _bc_querpower(sys, pts, rep, k_max):
    B, c, n = _center_parts(sys)
    for g in pts:
        for k in range(0, (k_max or K_MAX) + 1):
            _compare(rep, (g, k), lambda: querpower(sys, g, k),
                     lambda: int(B[binary_power(B, g, (2 - n) ** k),
                                   binary_power(B, c, -heine_number(k, 2 - n))]), True)


def _dm_power(sys, pts, rep, k_max):
    for g in pts:
        for k in range(0, (k_max or K_MAX) + 1):
            _compare(rep, (g, k), lambda: polyadic_power(sys, g, k),
                     lambda: ((k * (sys.arity - 1) + 1) * g + k * sys.c) % sys.m, True)


def _dm_negpower(sys, pts, rep, k_max):
    for g in pts:
        for k in range(0, (k_max or K_MAX) + 1):
            _compare(rep, (g, k), lambda: negative_polyadic_power(sys, g, k),
                     lambda: ((1 - k * (sys.arity - 1)) * g - k * sys.c) % sys.m, True)


def _dm_quer(sys, pts, rep, k_max):
    for g in pts:
        _compare(rep, (g,), lambda: querelement(sys, g),
                 lambda: ((2 - sys.arity) * g - sys.c) % sys.m, True)


def _dm_querpower(sys, pts, rep, k_max):
    def iterate(g, k):
        for _ in range(k):
            g = ((2 - sys.arity) * g - sys.c) % sys.m
        return g

    for g in pts:
        for k in range(0, (k_max or K_MAX) + 1):
            _compare(rep, (g, k), lambda: querpower(sys, g, k), lambda: iterate(g, k), True)


_HANDLERS = {
    ("qadd", "power"): _qadd_power,
    ("qadd", "quer"): _qadd_quer,
    ("copula", "quer"): _copula_quer,
    ("copula", "phi"): _copula_phi,
    ("qprod", "quer"): _qprod_quer,
    ("qprod", "phi"): _qprod_phi,
    ("binary_center", "power"): _bc_power,
    ("binary_center", "negpower"): _bc_negpower,
    ("binary_center", "quer"): _bc_quer,
    ("binary_center", "querpower"): _bc_querpower,
    ("derived_modular", "power"): _dm_power,
    ("derived_modular", "negpower"): _dm_negpower,
    ("derived_modular", "quer"): _dm_quer,
    ("derived_modular", "querpower"): _dm_querpower,
}


def reference_checks_for(family: str) -> list[str]:
    return [w for f, w in _HANDLERS if f == family]


# ---------------------------------------------------------------- finite suite

def s3_reverse_ternary() -> FiniteTable:
    """Nonabelian ternary group on S3: conjugation by a transposition, ``b`` = identity."""
    from .chain import reverse_construct

    B = symmetric3_table()
    t = 1
    inv = np.argmax(B == 0, axis=1)
    phi = B[B[t, np.arange(6)], inv[t]]
    return reverse_construct(B, phi, 0, 3)


def finite_suite():
    """Named finite n-ary groups used for exhaustive identity checks."""
    for m in range(2, 8):
        for n in (3, 4, 5):
            for c in range(m):
                yield f"derived:m={m},n={n},c={c}", DerivedModular(m, n, c)
    units = multiplicative_table(7)
    for c in range(6):
        yield f"binary_center:z7units,c={c}", binary_center(units, c, 4)
    s3 = symmetric3_table()
    for n in (3, 4):
        yield f"binary_center:s3,c=0,n={n}", binary_center(s3, 0, n)
    yield "reverse:s3,conj", s3_reverse_ternary()
