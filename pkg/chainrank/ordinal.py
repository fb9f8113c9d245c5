"""Ordinals below epsilon_0 in Cantor normal form."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from enum import IntEnum


class Ordering(IntEnum):
    """Result of comparing two ordinals."""

    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Ordinal:
    """An ordinal written as a decreasing sum of omega powers.

    ``terms`` holds ``(exponent, coefficient)`` pairs with strictly
    decreasing exponents and positive coefficients; the empty tuple is 0.
    The representation is canonical, so structural equality is ordinal
    equality.
    """

    terms: tuple[tuple[Ordinal, int], ...] = ()

    def __post_init__(self) -> None:
        """Reject non-canonical term lists."""
        previous: Ordinal | None = None
        for exponent, coefficient in self.terms:
            if coefficient < 1:
                raise ValueError(f"Coefficient must be positive, got {coefficient}")
            if previous is not None and ord_cmp(previous, exponent) != Ordering.GREATER:
                raise ValueError("Exponents must be strictly decreasing")
            previous = exponent

    @classmethod
    def finite(cls, value: int) -> Ordinal:
        """Return the natural number ``value`` as an ordinal."""
        if value < 0:
            raise ValueError(f"Ordinals are non-negative, got {value}")
        if value == 0:
            return cls()
        return cls(((cls(), value),))

    @classmethod
    def parse(cls, text: str) -> Ordinal:
        """Parse the textual format produced by ``str``."""
        return _OrdinalReader(text).read()

    @property
    def is_finite(self) -> bool:
        """Return True for natural numbers."""
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    def as_int(self) -> int:
        """Return the value of a finite ordinal."""
        if not self.is_finite:
            raise ValueError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def __lt__(self, other: object) -> bool:
        """Compare in ordinal order."""
        other_ordinal = _coerce(other)
        if other_ordinal is None:
            return NotImplemented
        return ord_cmp(self, other_ordinal) == Ordering.LESS

    def __le__(self, other: object) -> bool:
        other_ordinal = _coerce(other)
        if other_ordinal is None:
            return NotImplemented
        return ord_cmp(self, other_ordinal) != Ordering.GREATER

    def __gt__(self, other: object) -> bool:
        other_ordinal = _coerce(other)
        if other_ordinal is None:
            return NotImplemented
        return ord_cmp(self, other_ordinal) == Ordering.GREATER

    def __ge__(self, other: object) -> bool:
        other_ordinal = _coerce(other)
        if other_ordinal is None:
            return NotImplemented
        return ord_cmp(self, other_ordinal) != Ordering.LESS

    def __add__(self, other: object) -> Ordinal:
        other_ordinal = _coerce(other)
        if other_ordinal is None:
            return NotImplemented
        return ord_add(self, other_ordinal)

    def __radd__(self, other: object) -> Ordinal:
        other_ordinal = _coerce(other)
        if other_ordinal is None:
            return NotImplemented
        return ord_add(other_ordinal, self)

    def __mul__(self, other: object) -> Ordinal:
        other_ordinal = _coerce(other)
        if other_ordinal is None:
            return NotImplemented
        return ord_mul(self, other_ordinal)

    def __rmul__(self, other: object) -> Ordinal:
        other_ordinal = _coerce(other)
        if other_ordinal is None:
            return NotImplemented
        return ord_mul(other_ordinal, self)

    def __str__(self) -> str:
        """Render as ``w^k*c+...``; exponents are rendered recursively."""
        if not self.terms:
            return "0"
        parts = []
        for exponent, coefficient in self.terms:
            if not exponent.terms:
                parts.append(str(coefficient))
                continue
            if exponent == ONE:
                base = "w"
            elif exponent.is_finite:
                base = f"w^{exponent}"
            else:
                base = f"w^({exponent})"
            parts.append(base if coefficient == 1 else f"{base}*{coefficient}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"Ordinal('{self}')"


def _coerce(value: object) -> Ordinal | None:
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Ordinal.finite(value)
    return None


def ord_cmp(a: Ordinal, b: Ordinal) -> Ordering:
    """Compare two ordinals term by term from the leading term."""
    for (exp_a, coeff_a), (exp_b, coeff_b) in zip(a.terms, b.terms, strict=False):
        order = ord_cmp(exp_a, exp_b)
        if order != Ordering.EQUAL:
            return order
        if coeff_a != coeff_b:
            return Ordering.LESS if coeff_a < coeff_b else Ordering.GREATER
    if len(a.terms) == len(b.terms):
        return Ordering.EQUAL
    return Ordering.LESS if len(a.terms) < len(b.terms) else Ordering.GREATER


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Return ``a + b``; terms of ``a`` below the leading term of ``b`` vanish."""
    if not b.terms:
        return a
    lead_exponent, lead_coefficient = b.terms[0]
    kept: list[tuple[Ordinal, int]] = []
    for exponent, coefficient in a.terms:
        order = ord_cmp(exponent, lead_exponent)
        if order == Ordering.GREATER:
            kept.append((exponent, coefficient))
        elif order == Ordering.EQUAL:
            kept.append((exponent, coefficient + lead_coefficient))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def ord_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """Return ``a * b`` by distributing ``a`` over the terms of ``b``."""
    if not a.terms or not b.terms:
        return ZERO
    lead_exponent, lead_coefficient = a.terms[0]
    result = ZERO
    for exponent, coefficient in b.terms:
        if exponent.terms:
            part = Ordinal(((ord_add(lead_exponent, exponent), coefficient),))
        else:
            part = Ordinal(((lead_exponent, lead_coefficient * coefficient), *a.terms[1:]))
        result = ord_add(result, part)
    return result


def ord_sup(values: Iterable[Ordinal]) -> Ordinal:
    """Return the supremum of finitely many ordinals; the empty sup is 0."""
    return max(values, default=ZERO)


def ord_succ(value: Ordinal) -> Ordinal:
    """Return ``value + 1``."""
    return ord_add(value, ONE)


class _OrdinalReader:
    """Recursive-descent reader for ``w^(w+1)*2+w*3+4`` style text."""

    def __init__(self, text: str) -> None:
        self._text = "".join(text.split()).replace("ω", "w")
        self._pos = 0

    def read(self) -> Ordinal:
        if not self._text:
            raise ValueError("Empty ordinal text")
        value = self._sum()
        if self._pos != len(self._text):
            raise ValueError(
                f"Unexpected {self._text[self._pos]!r} at offset {self._pos} in ordinal"
            )
        return value

    def _peek(self) -> str:
        return self._text[self._pos] if self._pos < len(self._text) else ""

    def _expect(self, char: str) -> None:
        if self._peek() != char:
            raise ValueError(f"Expected {char!r} at offset {self._pos} in ordinal")
        self._pos += 1

    def _number(self) -> int:
        start = self._pos
        while self._peek().isdigit():
            self._pos += 1
        if start == self._pos:
            raise ValueError(f"Expected a number at offset {start} in ordinal")
        return int(self._text[start : self._pos])

    def _sum(self) -> Ordinal:
        value = self._term()
        while self._peek() == "+":
            self._pos += 1
            value = ord_add(value, self._term())
        return value

    def _term(self) -> Ordinal:
        if self._peek() != "w":
            return Ordinal.finite(self._number())
        self._pos += 1
        exponent = ONE
        if self._peek() == "^":
            self._pos += 1
            if self._peek() == "(":
                self._pos += 1
                exponent = self._sum()
                self._expect(")")
            else:
                exponent = Ordinal.finite(self._number())
        coefficient = 1
        if self._peek() == "*":
            self._pos += 1
            coefficient = self._number()
        if coefficient == 0 or not exponent.terms:
            return Ordinal.finite(coefficient if not exponent.terms else 0)
        return Ordinal(((exponent, coefficient),))


ZERO = Ordinal()
ONE = Ordinal.finite(1)
OMEGA = Ordinal(((ONE, 1),))
