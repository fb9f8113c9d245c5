"""Tests for the built-in catalog."""

from __future__ import annotations

import pytest

from chainrank.catalog import CATALOG, catalog_entries, lookup
from chainrank.dsl import evaluate, parse
from chainrank.exceptions import UnknownGroup
from chainrank.models import CatalogEntry


def test_names_are_unique() -> None:
    names = [entry.name for entry in CATALOG]
    assert len(names) == len(set(names))


def test_filter_by_order() -> None:
    small = catalog_entries(4)
    assert {entry.name for entry in small} >= {"C1", "C2", "C4", "D2", "E2_2", "S2"}
    assert all(entry.expected_order <= 4 for entry in small)
    assert catalog_entries() == list(CATALOG)


def test_lookup() -> None:
    assert lookup("C2wrC2").expression == "C(2) wr C(2)"
    with pytest.raises(UnknownGroup):
        lookup("C0")


@pytest.mark.parametrize("entry", catalog_entries(36), ids=lambda entry: entry.name)
def test_expressions_evaluate_to_the_expected_order(entry: CatalogEntry) -> None:
    assert evaluate(parse(entry.expression)).order == entry.expected_order
