"""Tests for ordinal arithmetic."""

from __future__ import annotations

import hypothesis.strategies as st
import pytest
from hypothesis import assume, given

from chainrank.ordinal import OMEGA, ONE, ZERO, Ordering, Ordinal, ord_cmp, ord_sup


def _ordinals(max_depth: int = 2) -> st.SearchStrategy[Ordinal]:
    """Ordinals below w^w^w built from finite sums of powers."""
    if max_depth == 0:
        return st.integers(min_value=0, max_value=6).map(Ordinal.finite)
    exponents = _ordinals(max_depth - 1)
    term = st.tuples(exponents, st.integers(min_value=1, max_value=4))
    return st.lists(term, max_size=3).map(_from_terms)


def _from_terms(terms: list[tuple[Ordinal, int]]) -> Ordinal:
    total = ZERO
    for exponent, coefficient in terms:
        power = Ordinal(((exponent, 1),))
        total = total + power * coefficient
    return total


ordinals = _ordinals()


def test_finite_arithmetic() -> None:
    """Natural numbers behave like integers."""
    assert Ordinal.finite(3) + Ordinal.finite(4) == Ordinal.finite(7)
    assert Ordinal.finite(3) * Ordinal.finite(4) == Ordinal.finite(12)
    assert Ordinal.finite(5).as_int() == 5
    assert ZERO.as_int() == 0


def test_absorption() -> None:
    """Finite summands on the left are absorbed by omega."""
    assert ONE + OMEGA == OMEGA
    assert OMEGA + ONE != OMEGA
    assert OMEGA < OMEGA + ONE
    assert Ordinal.finite(2) * OMEGA == OMEGA
    assert OMEGA * 2 == OMEGA + OMEGA


def test_int_comparisons() -> None:
    assert Ordinal.finite(3) > 2
    assert Ordinal.finite(3) <= 3
    assert OMEGA > 10**9
    assert 2 + OMEGA == OMEGA


@pytest.mark.parametrize(
    ("value", "text"),
    [
        (ZERO, "0"),
        (Ordinal.finite(7), "7"),
        (OMEGA, "w"),
        (OMEGA + ONE, "w+1"),
        (OMEGA * 2 + 3, "w*2+3"),
        (OMEGA * OMEGA, "w^2"),
        (Ordinal(((OMEGA + ONE, 3),)), "w^(w+1)*3"),
    ],
)
def test_render_and_parse(value: Ordinal, text: str) -> None:
    """Rendering is canonical and parses back."""
    assert str(value) == text
    assert Ordinal.parse(text) == value


def test_rejects_non_canonical_terms() -> None:
    with pytest.raises(ValueError):
        Ordinal(((ZERO, 1), (ONE, 1)))
    with pytest.raises(ValueError):
        Ordinal(((ONE, 0),))
    with pytest.raises(ValueError):
        Ordinal.finite(-1)
    with pytest.raises(ValueError):
        OMEGA.as_int()


@given(ordinals, ordinals, ordinals)
def test_addition_associative(a: Ordinal, b: Ordinal, c: Ordinal) -> None:
    assert (a + b) + c == a + (b + c)


@given(ordinals, ordinals, ordinals)
def test_multiplication_distributes_on_the_left(
    a: Ordinal, b: Ordinal, c: Ordinal
) -> None:
    assert a * (b + c) == a * b + a * c


@given(ordinals, ordinals)
def test_addition_is_monotone_in_the_right_argument(a: Ordinal, b: Ordinal) -> None:
    assert a + b >= a
    if b > ZERO:
        assert a + b > a


@given(ordinals, ordinals)
def test_comparison_is_a_total_order(a: Ordinal, b: Ordinal) -> None:
    order = ord_cmp(a, b)
    assert order == Ordering(-ord_cmp(b, a))
    assert (order == Ordering.EQUAL) == (a == b)


@given(ordinals)
def test_text_round_trip(a: Ordinal) -> None:
    assert Ordinal.parse(str(a)) == a


@given(st.lists(ordinals, max_size=5))
def test_sup_bounds_every_value(values: list[Ordinal]) -> None:
    top = ord_sup(values)
    assert all(value <= top for value in values)
    assert top == ZERO or top in values


def test_worked_sums_and_products() -> None:
    assert (OMEGA * 2 + 3) + (OMEGA + ONE) == OMEGA * 3 + 1
    assert str((OMEGA * 2 + 3) + (OMEGA + ONE)) == "w*3+1"
    assert OMEGA * (OMEGA + ONE) == OMEGA * OMEGA + OMEGA
    assert (OMEGA + ONE) * 2 == OMEGA * 2 + 1


@given(ordinals, ordinals, ordinals)
def test_multiplication_associative(a: Ordinal, b: Ordinal, c: Ordinal) -> None:
    assert (a * b) * c == a * (b * c)


@given(ordinals, ordinals, ordinals)
def test_addition_strictly_monotone_on_the_right(
    a: Ordinal, b: Ordinal, c: Ordinal
) -> None:
    assume(b != c)
    low, high = min(b, c), max(b, c)
    assert a + low < a + high


@given(ordinals, ordinals, ordinals)
def test_multiplication_strictly_monotone_on_the_right(
    a: Ordinal, b: Ordinal, c: Ordinal
) -> None:
    assume(a > ZERO and b != c)
    low, high = min(b, c), max(b, c)
    assert a * low < a * high


@given(ordinals)
def test_omega_times_successor(a: Ordinal) -> None:
    assert OMEGA * (a + ONE) == OMEGA * a + OMEGA
