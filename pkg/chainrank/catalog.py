"""Built-in catalog of small groups used by the verify suites."""

from __future__ import annotations

from math import factorial

from .exceptions import UnknownGroup
from .models import CatalogEntry


def _entry(name: str, expression: str, order: int) -> CatalogEntry:
    return CatalogEntry(name=name, expression=expression, expected_order=order)


def _build() -> tuple[CatalogEntry, ...]:
    entries = [_entry(f"C{n}", f"C({n})", n) for n in range(1, 33)]
    entries += [_entry(f"D{n}", f"D({n})", 2 * n) for n in range(1, 17)]
    entries += [_entry(f"S{n}", f"S({n})", factorial(n)) for n in range(1, 6)]
    entries += [
        _entry(f"A{n}", f"A({n})", max(1, factorial(n) // 2)) for n in range(1, 6)
    ]
    entries += [
        _entry("Q8", "Q8", 8),
        _entry("E2_2", "E(2, 2)", 4),
        _entry("E2_3", "E(2, 3)", 8),
        _entry("E2_4", "E(2, 4)", 16),
        _entry("E3_2", "E(3, 2)", 9),
        _entry("E5_2", "E(5, 2)", 25),
        _entry("S3xC2", "S(3) * C(2)", 12),
        _entry("S3xC3", "S(3) * C(3)", 18),
        _entry("Q8xC2", "Q8 * C(2)", 16),
        _entry("D4xC3", "D(4) * C(3)", 24),
        _entry("S3xS3", "S(3) * S(3)", 36),
        _entry("C2wrC2", "C(2) wr C(2)", 8),
        _entry("C2wrC3", "C(2) wr C(3)", 24),
        _entry("C3wrC2", "C(3) wr C(2)", 18),
    ]
    return tuple(entries)


CATALOG: tuple[CatalogEntry, ...] = _build()


def catalog_entries(max_order: int | None = None) -> list[CatalogEntry]:
    """Return the catalog in its fixed order, optionally filtered by order."""
    return [
        entry
        for entry in CATALOG
        if max_order is None or entry.expected_order <= max_order
    ]


def lookup(name: str) -> CatalogEntry:
    """Return the catalog entry with the given name."""
    for entry in CATALOG:
        if entry.name == name:
            return entry
    raise UnknownGroup(f"No catalog group named {name!r}")
