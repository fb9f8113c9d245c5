"""Tests for the group-construction expression language."""

from __future__ import annotations

import pytest

from chainrank.dsl import (
    Atom,
    Param,
    Power,
    Product,
    Quotient,
    UnionFamily,
    WordGen,
    WordPower,
    Wreath,
    evaluate,
    parse,
    rk_bound,
    tokenize,
    xi_bound,
)
from chainrank.exceptions import (
    DslSyntaxError,
    SizeLimitExceeded,
    UnboundParameter,
    WordResolution,
)
from chainrank.models import Limits
from chainrank.ordinal import OMEGA, ZERO, Ordinal

C2 = Atom("C", (2,))
C3 = Atom("C", (3,))
S3 = Atom("S", (3,))


def test_tokenize_tracks_positions() -> None:
    tokens = tokenize("C(2)\n  wr Q8 # comment")
    assert [t.text for t in tokens] == ["C", "(", "2", ")", "wr", "Q8", ""]
    assert (tokens[4].line, tokens[4].column) == (2, 3)
    assert tokens[-1].kind == "end"


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("C(2)", C2),
        ("Q8", Atom("Q8")),
        ("E(2, 3)", Atom("E", (2, 3))),
        ("C(2) wr C(2)", Wreath(C2, C2)),
        ("S(3) * C(2) wr C(2)", Wreath(Product(S3, C2), C2)),
        ("C(2) * C(3) * C(2)", Product(Product(C2, C3), C2)),
        ("C(2) wr (C(2) wr C(3))", Wreath(C2, Wreath(C2, C3))),
        ("C(n)", Atom("C", (Param("n"),))),
        ("C(2^n)", Atom("C", (Power(2, Param("n")),))),
        ("quotient(S(3); g0^-1)", Quotient(S3, (WordPower(WordGen(0), -1),))),
        ("union(n, C(n))", UnionFamily("n", Atom("C", (Param("n"),)))),
    ],
)
def test_parse_shapes(text: str, expected: object) -> None:
    assert parse(text) == expected


@pytest.mark.parametrize(
    "text",
    [
        "C(2) wr C(2)",
        "S(3) * C(2) wr C(2)",
        "C(2) * (C(3) * C(5))",
        "(C(2) wr C(2)) * C(3)",
        "C(2) wr (C(2) wr C(3))",
        "quotient(S(3); g0, g1*g0^2)",
        "subgroup(S(4); (g0*g1)^-1)",
        "perm(4; (0 1 2 3), (0 2))",
        "union(n, C(2^n) * S(3))",
        "E(p, k)",
    ],
)
def test_render_parses_back(text: str) -> None:
    expr = parse(text)
    assert parse(expr.render()) == expr
    assert str(expr) == expr.render()


@pytest.mark.parametrize(
    ("text", "order"),
    [
        ("C(2) wr C(2)", 8),
        ("C(3) wr C(2)", 18),
        ("S(3) * C(2)", 12),
        ("D(4)", 8),
        ("A(4)", 12),
        ("Q8", 8),
        ("E(2, 3)", 8),
        ("C(2^3)", 8),
        ("quotient(S(3); g0)", 2),
        ("quotient(S(4); g1)", 1),
        ("subgroup(S(4); g0)", 4),
        ("subgroup(S(3); g0*g1)", 2),
        ("subgroup(S(3); e)", 1),
        ("perm(4; (0 1 2 3), (0 2))", 8),
    ],
)
def test_evaluate_orders(text: str, order: int) -> None:
    assert evaluate(parse(text)).order == order


def test_bindings() -> None:
    assert evaluate(parse("C(n) * C(m)"), {"n": 3, "m": 5}).order == 15
    assert evaluate(parse("union(n, C(2^n))"), {"n": 3}).order == 8
    with pytest.raises(UnboundParameter):
        evaluate(parse("C(n)"))
    with pytest.raises(UnboundParameter):
        evaluate(parse("union(n, C(n))"))


def test_evaluate_respects_limits() -> None:
    with pytest.raises(SizeLimitExceeded):
        evaluate(parse("S(5) * S(3)"), limits=Limits(group_order=100))


def test_word_resolution() -> None:
    with pytest.raises(WordResolution):
        evaluate(parse("quotient(C(2); g1)"))


@pytest.mark.parametrize(
    ("text", "line", "column"),
    [
        ("C(2", 1, 4),
        ("S(3) *\n  X(2)", 2, 3),
        ("C(2) $", 1, 6),
        ("C(2) C(3)", 1, 6),
        ("quotient(S(3); h0)", 1, 16),
        ("union(wr, C(2))", 1, 7),
    ],
)
def test_syntax_errors_carry_positions(text: str, line: int, column: int) -> None:
    with pytest.raises(DslSyntaxError) as err:
        parse(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert str(err.value).startswith(f"line {line}, column {column}: ")


@pytest.mark.parametrize(
    ("text", "bound", "exact"),
    [
        ("C(2)", ZERO, 0),
        ("S(3) * C(2)", Ordinal.finite(1), 0),
        ("C(2) wr C(2)", Ordinal.finite(2), 0),
        ("C(2) wr (C(2) * C(3))", Ordinal.finite(3), 0),
        ("quotient(S(3) * C(2); g0)", Ordinal.finite(1), 0),
        ("union(n, C(n))", Ordinal.finite(1), None),
        ("union(n, C(n) wr C(2))", Ordinal.finite(3), None),
    ],
)
def test_rk_bound(text: str, bound: Ordinal, exact: int | None) -> None:
    result = rk_bound(parse(text))
    assert result.bound == bound
    assert result.exact == exact


def test_xi_bound() -> None:
    assert xi_bound(parse("C(2)")) == OMEGA
    assert xi_bound(parse("S(3) * C(2)")) == OMEGA * 2
    assert xi_bound(parse("C(2) wr C(2)")) == OMEGA * 3
