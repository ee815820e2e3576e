import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyadic import gallery
from polyadic.core import (
    DerivedModular,
    FiniteTable,
    evaluate,
    fold,
    fold_right,
    heine_number,
    iterated_length,
    iterated_product,
    polyadic_power,
    power_by_recurrence,
    reduced_product,
    require_budget,
    sweep_budget,
)
from polyadic.errors import ArityMismatch, DomainViolation, PositionOverlap, SweepBudgetExceeded


def test_evaluate_derived(dm532):
    assert evaluate(dm532, (1, 2, 3)) == 3


def test_evaluate_rejects_wrong_arity(dm532):
    with pytest.raises(ArityMismatch):
        evaluate(dm532, (1, 2))


def test_evaluate_rejects_foreign_element(dm532):
    with pytest.raises(DomainViolation):
        evaluate(dm532, (1, 2, 7))
    with pytest.raises(DomainViolation):
        evaluate(dm532, (1, 2, 1.5))


def test_copula_idempotent_point():
    assert evaluate(gallery.copula(), (0.4, 0.4, 0.4)) == pytest.approx(0.4, rel=1e-12)


def test_copula_zero_over_zero():
    # g = 0 and h = 1 make numerator and denominator vanish together
    assert evaluate(gallery.copula(), (0.0, 1.0, 0.5)) == 0.0


def test_copula_rejects_outside_unit_interval():
    with pytest.raises(DomainViolation):
        evaluate(gallery.copula(), (1.2, 0.5, 0.5))


def test_qprod_small_hbar_limit_with_unit_offset():
    # with bracket offset n-1 the small-hbar limit is the ordinary product
    sys = gallery.qprod(1e-6, offset=2)
    assert evaluate(sys, (2.0, 3.0, 4.0)) == pytest.approx(24, abs=1e-3)


def test_qprod_small_hbar_default_offset_has_no_product_limit():
    with pytest.raises(DomainViolation):
        evaluate(gallery.qprod(1e-6), (2.0, 3.0, 4.0))


def test_qprod_rejects_negative_bracket():
    with pytest.raises(DomainViolation):
        evaluate(gallery.qprod(0.5), (0.1, 0.1, 0.1))


def test_iterated_product_derived(dm532):
    assert iterated_product(dm532, 2, (0,) * 5) == 4


def test_iterated_product_single_is_evaluate(dm532):
    assert iterated_product(dm532, 1, (1, 4, 2)) == evaluate(dm532, (1, 4, 2))


@pytest.mark.parametrize("ell", range(1, 6))
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_arity_law(n, ell):
    sys = DerivedModular(3, n, 1)
    need = iterated_length(n, ell)
    assert need == ell * (n - 1) + 1
    iterated_product(sys, ell, (0,) * need)
    with pytest.raises(ArityMismatch):
        iterated_product(sys, ell, (0,) * (need + 1))


def test_qprod_thirteen_copies():
    e, hbar = 2.0, 0.5
    sys = gallery.qprod(hbar)
    got = iterated_product(sys, 6, (e,) * 13)
    assert got == pytest.approx((13 * e**hbar - 18) ** (1 / hbar), rel=1e-9)


def test_reduced_product():
    sys = DerivedModular(5, 3, 0)
    assert reduced_product(sys, (2,), (2,), (1, 1)) == 4


def test_reduced_product_overlap():
    sys = DerivedModular(5, 4, 0)
    with pytest.raises(PositionOverlap):
        reduced_product(sys, (1, 2), (0, 0), (1, 1))


def test_reduced_product_too_many_constants():
    sys = DerivedModular(5, 3, 0)
    with pytest.raises(ArityMismatch):
        reduced_product(sys, (1, 2), (0, 1), (1,))


def test_power_zero_is_identity_map(dm532):
    assert polyadic_power(dm532, 3, 0) == 3


def test_power_qadd_closed_form():
    n, hbar, g = 3, 0.5, 0.7
    sys = gallery.qadd(n, hbar)
    for k in range(1, 7):
        assert polyadic_power(sys, g, k) == pytest.approx(gallery.qadd_power(g, n, hbar, k), rel=1e-10)


@pytest.mark.parametrize("m", range(2, 8))
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_power_derived_closed_form(m, n):
    for c in range(m):
        sys = DerivedModular(m, n, c)
        for g in range(m):
            for ell in range(7):
                assert polyadic_power(sys, g, ell) == ((ell * (n - 1) + 1) * g + ell * c) % m


@given(st.integers(2, 7), st.integers(3, 5), st.data())
def test_nestings_agree_on_associative_systems(m, n, data):
    c = data.draw(st.integers(0, m - 1))
    ell = data.draw(st.integers(1, 4))
    args = data.draw(st.lists(st.integers(0, m - 1), min_size=iterated_length(n, ell),
                              max_size=iterated_length(n, ell)))
    sys = DerivedModular(m, n, c)
    assert fold(sys, ell, args) == fold_right(sys, ell, args)


@given(st.integers(0, 7), st.integers(2, 6))
def test_power_recurrence_matches_fold(g, ell):
    sys = DerivedModular(8, 4, 3)
    assert power_by_recurrence(sys, g, ell) == polyadic_power(sys, g, ell)


def test_heine_examples():
    assert heine_number(0, 7) == 0
    assert heine_number(3, 3) == 13
    assert heine_number(9, 1) == 9
    assert heine_number(2, -2) == -1


@pytest.mark.parametrize("q", [q for q in range(-3, 6) if q != 1])
def test_heine_recurrence(q):
    for k in range(1, 13):
        assert heine_number(k, q) == q * heine_number(k - 1, q) + 1


def test_heine_recurrence_q_one():
    for k in range(1, 13):
        assert heine_number(k, 1) == heine_number(k - 1, 1) + 1


def test_finite_table_validation():
    with pytest.raises(ValueError):
        FiniteTable(2, 2, [0, 1, 2, 0])
    with pytest.raises(ValueError):
        FiniteTable(2, 2, [0, 1, 1])
    t = FiniteTable(2, 2, [[0, 1], [1, 0]])
    assert t.apply(1, 1) == 0
    assert not t.table.flags.writeable


def test_derived_table_matches_rule():
    sys = DerivedModular(4, 3, 1)
    grid = np.indices((4, 4, 4))
    assert (sys.table == sys.apply(*grid)).all()


def test_budget(monkeypatch):
    monkeypatch.setenv("POLYADIC_BUDGET", "50")
    assert sweep_budget() == 50
    with pytest.raises(SweepBudgetExceeded):
        require_budget(51, None)
    assert sweep_budget(7) == 7
