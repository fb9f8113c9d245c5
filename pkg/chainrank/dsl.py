"""Group-construction expressions: parsing, evaluation and rank bounds.

Grammar::

    expr    := prod ('wr' prod)*
    prod    := term ('*' term)*
    term    := '(' expr ')'
             | 'quotient' '(' expr ';' words ')'
             | 'subgroup' '(' expr ';' words ')'
             | 'union' '(' name ',' expr ')'
             | 'perm' '(' int ';' permgen (',' permgen)* ')'
             | ('C' | 'S' | 'A' | 'D') '(' int ')' | 'E' '(' int ',' int ')' | 'Q8'
    int     := (number | name) ('^' (number | name))?
    words   := word (',' word)*
    word    := factor ('*' factor)*
    factor  := ('g' digits | 'e' | '(' word ')') ('^' '-'? number)?
    permgen := ('(' number* ')')+

``*`` binds tighter than ``wr`` and both associate to the left.
"""

from __future__ import annotations

import logging
import re
from abc import ABC, abstractmethod
from collections.abc import Mapping
from dataclasses import dataclass
from functools import reduce

from .exceptions import DslSyntaxError, UnboundParameter, WordResolution
from .groups import (
    IDENTITY,
    FinGroup,
    alternating_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    elementary_abelian_group,
    generate_group,
    normal_closure,
    parse_cycles,
    quaternion_group,
    quotient,
    subgroup_closure,
    symmetric_group,
    wreath_product,
)
from .models import Limits
from .ordinal import OMEGA, ONE, ZERO, Ordinal, ord_succ

LOGGER = logging.getLogger(__name__)

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER = re.compile(r"\d+")
_GENERATOR = re.compile(r"g(\d+)")
_SYMBOLS = "()*,;^-"
_KEYWORDS = {"wr", "quotient", "subgroup", "union", "perm", "C", "S", "A", "D", "E", "Q8"}
_ONE_ARG_ATOMS = {"C", "S", "A", "D"}

Bindings = Mapping[str, int]


@dataclass(frozen=True)
class Token:
    """A lexical token with its 1-based position."""

    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    """Split expression text into tokens; ``#`` starts a comment."""
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        char = text[pos]
        column = pos - line_start + 1
        if char == "\n":
            line, line_start = line + 1, pos + 1
            pos += 1
        elif char.isspace():
            pos += 1
        elif char == "#":
            while pos < len(text) and text[pos] != "\n":
                pos += 1
        elif char in _SYMBOLS:
            tokens.append(Token("symbol", char, line, column))
            pos += 1
        elif match := _NUMBER.match(text, pos):
            tokens.append(Token("number", match.group(), line, column))
            pos = match.end()
        elif match := _NAME.match(text, pos):
            tokens.append(Token("name", match.group(), line, column))
            pos = match.end()
        else:
            raise DslSyntaxError(f"Unexpected character {char!r}", line, column)
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


@dataclass(frozen=True)
class Param:
    """Integer parameter bound at evaluation time."""

    name: str


@dataclass(frozen=True)
class Power:
    """Integer argument ``base^exponent``."""

    base: int | Param
    exponent: int | Param


IntArg = int | Param | Power


def _render_int(arg: IntArg) -> str:
    if isinstance(arg, Param):
        return arg.name
    if isinstance(arg, Power):
        return f"{_render_int(arg.base)}^{_render_int(arg.exponent)}"
    return str(arg)


def _resolve_int(arg: IntArg, bindings: Bindings) -> int:
    if isinstance(arg, Param):
        if arg.name not in bindings:
            raise UnboundParameter(f"Parameter {arg.name!r} has no value")
        return bindings[arg.name]
    if isinstance(arg, Power):
        return int(_resolve_int(arg.base, bindings) ** _resolve_int(arg.exponent, bindings))
    return arg


class Word(ABC):
    """Word over the generators of an evaluated group."""

    @abstractmethod
    def render(self) -> str:
        """Return the canonical text."""

    @abstractmethod
    def resolve(self, group: FinGroup) -> int:
        """Return the element index the word evaluates to."""


@dataclass(frozen=True)
class WordGen(Word):
    """Generator ``g<index>``."""

    index: int

    def render(self) -> str:
        return f"g{self.index}"

    def resolve(self, group: FinGroup) -> int:
        if self.index >= len(group.generators):
            raise WordResolution(
                f"g{self.index} used but the group has {len(group.generators)} generators"
            )
        return group.generators[self.index]


@dataclass(frozen=True)
class WordIdentity(Word):
    """The identity ``e``."""

    def render(self) -> str:
        return "e"

    def resolve(self, group: FinGroup) -> int:
        return IDENTITY


@dataclass(frozen=True)
class WordProduct(Word):
    """Product of factors, left to right."""

    factors: tuple[Word, ...]

    def render(self) -> str:
        return "*".join(
            f"({factor.render()})" if isinstance(factor, WordProduct) else factor.render()
            for factor in self.factors
        )

    def resolve(self, group: FinGroup) -> int:
        return reduce(group.mul, (factor.resolve(group) for factor in self.factors), IDENTITY)


@dataclass(frozen=True)
class WordPower(Word):
    """Integer power of a word; negative exponents invert."""

    base: Word
    exponent: int

    def render(self) -> str:
        base = self.base.render()
        if isinstance(self.base, WordProduct | WordPower):
            base = f"({base})"
        return f"{base}^{self.exponent}"

    def resolve(self, group: FinGroup) -> int:
        element = self.base.resolve(group)
        if self.exponent < 0:
            element = group.inv(element)
        result = IDENTITY
        for _ in range(abs(self.exponent)):
            result = group.mul(result, element)
        return result


@dataclass(frozen=True)
class RkBound:
    """Structural bound on the construction rank.

    ``exact`` is the construction rank itself when the expression denotes
    a finite group, and None for symbolic unions.
    """

    bound: Ordinal
    exact: int | None


class GroupExpr(ABC):
    """Node of a group-construction expression."""

    @abstractmethod
    def render(self) -> str:
        """Return the canonical text, which parses back to an equal node."""

    @abstractmethod
    def evaluate(self, bindings: Bindings, limits: Limits) -> FinGroup:
        """Build the group the expression denotes."""

    @abstractmethod
    def structural_bound(self) -> Ordinal:
        """Return the construction-rank bound read off the syntax."""

    def is_symbolic(self) -> bool:
        """Return True when the expression contains a union family."""
        return False

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Atom(GroupExpr):
    """Named group: C(n), S(n), A(n), D(n), E(p, k) or Q8."""

    kind: str
    args: tuple[IntArg, ...] = ()

    def render(self) -> str:
        if not self.args:
            return self.kind
        return f"{self.kind}({', '.join(_render_int(arg) for arg in self.args)})"

    def evaluate(self, bindings: Bindings, limits: Limits) -> FinGroup:
        values = [_resolve_int(arg, bindings) for arg in self.args]
        if self.kind == "Q8":
            return quaternion_group(limits)
        if self.kind == "E":
            return elementary_abelian_group(values[0], values[1], limits)
        constructor = {
            "C": cyclic_group,
            "S": symmetric_group,
            "A": alternating_group,
            "D": dihedral_group,
        }[self.kind]
        return constructor(values[0], limits)

    def structural_bound(self) -> Ordinal:
        return ZERO


@dataclass(frozen=True)
class PermAtom(GroupExpr):
    """Group generated by explicit permutations in cycle notation."""

    degree: IntArg
    generators: tuple[tuple[tuple[int, ...], ...], ...]

    def render(self) -> str:
        gens = ", ".join(
            "".join("(" + " ".join(str(p) for p in cycle) + ")" for cycle in gen)
            for gen in self.generators
        )
        return f"perm({_render_int(self.degree)}; {gens})"

    def evaluate(self, bindings: Bindings, limits: Limits) -> FinGroup:
        degree = _resolve_int(self.degree, bindings)
        perms = [
            parse_cycles(
                "".join("(" + " ".join(str(p) for p in cycle) + ")" for cycle in gen),
                degree,
            )
            for gen in self.generators
        ]
        return generate_group(degree, perms, limits)

    def structural_bound(self) -> Ordinal:
        return ZERO


@dataclass(frozen=True)
class Product(GroupExpr):
    """Direct product."""

    left: GroupExpr
    right: GroupExpr

    def render(self) -> str:
        left = self.left.render()
        if isinstance(self.left, Wreath):
            left = f"({left})"
        right = self.right.render()
        if isinstance(self.right, Wreath | Product):
            right = f"({right})"
        return f"{left} * {right}"

    def evaluate(self, bindings: Bindings, limits: Limits) -> FinGroup:
        return direct_product(
            self.left.evaluate(bindings, limits),
            self.right.evaluate(bindings, limits),
            limits,
        )

    def structural_bound(self) -> Ordinal:
        return ord_succ(max(self.left.structural_bound(), self.right.structural_bound()))

    def is_symbolic(self) -> bool:
        return self.left.is_symbolic() or self.right.is_symbolic()


@dataclass(frozen=True)
class Wreath(GroupExpr):
    """Wreath product; the top group permutes copies of the base."""

    base: GroupExpr
    top: GroupExpr

    def render(self) -> str:
        top = self.top.render()
        if isinstance(self.top, Wreath):
            top = f"({top})"
        return f"{self.base.render()} wr {top}"

    def evaluate(self, bindings: Bindings, limits: Limits) -> FinGroup:
        return wreath_product(
            self.base.evaluate(bindings, limits),
            self.top.evaluate(bindings, limits),
            limits,
        )

    def structural_bound(self) -> Ordinal:
        return max(self.base.structural_bound(), self.top.structural_bound()) + 2

    def is_symbolic(self) -> bool:
        return self.base.is_symbolic() or self.top.is_symbolic()


def _render_words(words: tuple[Word, ...]) -> str:
    return ", ".join(word.render() for word in words)


@dataclass(frozen=True)
class Quotient(GroupExpr):
    """Quotient by the normal closure of the given words."""

    expr: GroupExpr
    words: tuple[Word, ...]

    def render(self) -> str:
        return f"quotient({self.expr.render()}; {_render_words(self.words)})"

    def evaluate(self, bindings: Bindings, limits: Limits) -> FinGroup:
        group = self.expr.evaluate(bindings, limits)
        kernel = normal_closure(group, [word.resolve(group) for word in self.words])
        return quotient(group, kernel).as_fingroup()

    def structural_bound(self) -> Ordinal:
        return self.expr.structural_bound()

    def is_symbolic(self) -> bool:
        return self.expr.is_symbolic()


@dataclass(frozen=True)
class SubgroupOf(GroupExpr):
    """Subgroup generated by the given words."""

    expr: GroupExpr
    words: tuple[Word, ...]

    def render(self) -> str:
        return f"subgroup({self.expr.render()}; {_render_words(self.words)})"

    def evaluate(self, bindings: Bindings, limits: Limits) -> FinGroup:
        group = self.expr.evaluate(bindings, limits)
        seed = [word.resolve(group) for word in self.words]
        return subgroup_closure(group, seed).as_fingroup(limits)

    def structural_bound(self) -> Ordinal:
        return self.expr.structural_bound()

    def is_symbolic(self) -> bool:
        return self.expr.is_symbolic()


@dataclass(frozen=True)
class UnionFamily(GroupExpr):
    """Increasing union over a parameter; evaluates one member when bound."""

    parameter: str
    body: GroupExpr

    def render(self) -> str:
        return f"union({self.parameter}, {self.body.render()})"

    def evaluate(self, bindings: Bindings, limits: Limits) -> FinGroup:
        if self.parameter not in bindings:
            raise UnboundParameter(
                f"union over {self.parameter!r} is infinite; bind {self.parameter} "
                "to evaluate one member"
            )
        return self.body.evaluate(bindings, limits)

    def structural_bound(self) -> Ordinal:
        return ord_succ(self.body.structural_bound())

    def is_symbolic(self) -> bool:
        return True


class _Parser:
    """Recursive-descent parser over a token list."""

    def __init__(self, text: str) -> None:
        self._tokens = tokenize(text)
        self._pos = 0

    def _peek(self) -> Token:
        return self._tokens[self._pos]

    def _error(self, message: str, token: Token | None = None) -> DslSyntaxError:
        token = token or self._peek()
        found = token.text or "end of input"
        return DslSyntaxError(f"{message}, found {found!r}", token.line, token.column)

    def _at(self, text: str) -> bool:
        token = self._peek()
        return token.kind in ("symbol", "name") and token.text == text

    def _advance(self) -> Token:
        token = self._peek()
        self._pos += 1
        return token

    def _expect(self, text: str) -> Token:
        if not self._at(text):
            raise self._error(f"Expected {text!r}")
        return self._advance()

    def parse(self) -> GroupExpr:
        expr = self._expr()
        if self._peek().kind != "end":
            raise self._error("Unexpected trailing input")
        return expr

    def _expr(self) -> GroupExpr:
        expr = self._prod()
        while self._at("wr"):
            self._advance()
            expr = Wreath(expr, self._prod())
        return expr

    def _prod(self) -> GroupExpr:
        expr = self._term()
        while self._at("*"):
            self._advance()
            expr = Product(expr, self._term())
        return expr

    def _term(self) -> GroupExpr:
        token = self._peek()
        if self._at("("):
            self._advance()
            expr = self._expr()
            self._expect(")")
            return expr
        if token.kind != "name":
            raise self._error("Expected a group")
        name = self._advance().text
        if name == "Q8":
            return Atom("Q8")
        if name in ("quotient", "subgroup"):
            self._expect("(")
            inner = self._expr()
            self._expect(";")
            words = self._words()
            self._expect(")")
            return Quotient(inner, words) if name == "quotient" else SubgroupOf(inner, words)
        if name == "union":
            self._expect("(")
            parameter = self._peek()
            if parameter.kind != "name" or parameter.text in _KEYWORDS:
                raise self._error("Expected a parameter name")
            self._advance()
            self._expect(",")
            body = self._expr()
            self._expect(")")
            return UnionFamily(parameter.text, body)
        if name == "perm":
            self._expect("(")
            degree = self._int()
            self._expect(";")
            gens = [self._permgen()]
            while self._at(","):
                self._advance()
                gens.append(self._permgen())
            self._expect(")")
            return PermAtom(degree, tuple(gens))
        if name in _ONE_ARG_ATOMS:
            self._expect("(")
            arg = self._int()
            self._expect(")")
            return Atom(name, (arg,))
        if name == "E":
            self._expect("(")
            prime = self._int()
            self._expect(",")
            rank = self._int()
            self._expect(")")
            return Atom("E", (prime, rank))
        raise self._error("Unknown group", token)

    def _int_primary(self) -> int | Param:
        token = self._peek()
        if token.kind == "number":
            self._advance()
            return int(token.text)
        if token.kind == "name" and token.text not in _KEYWORDS:
            self._advance()
            return Param(token.text)
        raise self._error("Expected an integer or parameter")

    def _int(self) -> IntArg:
        base = self._int_primary()
        if self._at("^"):
            self._advance()
            return Power(base, self._int_primary())
        return base

    def _permgen(self) -> tuple[tuple[int, ...], ...]:
        cycles = []
        while self._at("("):
            self._advance()
            points = []
            while self._peek().kind == "number":
                points.append(int(self._advance().text))
            self._expect(")")
            cycles.append(tuple(points))
        if not cycles:
            raise self._error("Expected a permutation in cycle notation")
        return tuple(cycles)

    def _words(self) -> tuple[Word, ...]:
        words = [self._word()]
        while self._at(","):
            self._advance()
            words.append(self._word())
        return tuple(words)

    def _word(self) -> Word:
        factors = [self._factor()]
        while self._at("*"):
            self._advance()
            factors.append(self._factor())
        return factors[0] if len(factors) == 1 else WordProduct(tuple(factors))

    def _factor(self) -> Word:
        token = self._peek()
        base: Word
        if self._at("("):
            self._advance()
            base = self._word()
            self._expect(")")
        elif token.kind == "name" and token.text == "e":
            self._advance()
            base = WordIdentity()
        elif token.kind == "name" and (match := _GENERATOR.fullmatch(token.text)):
            self._advance()
            base = WordGen(int(match.group(1)))
        else:
            raise self._error("Expected a generator word")
        if not self._at("^"):
            return base
        self._advance()
        sign = 1
        if self._at("-"):
            self._advance()
            sign = -1
        if self._peek().kind != "number":
            raise self._error("Expected an exponent")
        return WordPower(base, sign * int(self._advance().text))


def parse(text: str) -> GroupExpr:
    """Parse expression text."""
    expr = _Parser(text).parse()
    LOGGER.debug("Parsed %s", expr)
    return expr


def evaluate(
    expr: GroupExpr,
    bindings: Bindings | None = None,
    limits: Limits | None = None,
) -> FinGroup:
    """Build the concrete group an expression denotes."""
    return expr.evaluate(bindings or {}, limits or Limits())


def rk_bound(expr: GroupExpr) -> RkBound:
    """Return the structural construction-rank bound and, when finite, the exact rank."""
    return RkBound(expr.structural_bound(), None if expr.is_symbolic() else 0)


def xi_bound(expr: GroupExpr) -> Ordinal:
    """Return ``w * (rk_bound + 1)``, which bounds the offset-1 decomposition tree rank."""
    return OMEGA * (rk_bound(expr).bound + ONE)
