"""Tests for the ChainRank service."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from chainrank.cache import ResultCache
from chainrank.catalog import lookup
from chainrank.chainrank import (
    ChainRank,
    compute_chain,
    compute_report,
    compute_tree,
    resolve_source,
)
from chainrank.const import FORMAT_DOT, FORMAT_GRAPHML, FORMAT_JSON
from chainrank.exceptions import DslSyntaxError, UnknownGroup
from chainrank.models import InvariantId


def test_resolve_source_prefers_files(tmp_path: Path) -> None:
    path = tmp_path / "gens.txt"
    path.write_text("degree 4\n(0 1 2 3)\n", encoding="utf-8")
    group, expression = resolve_source(str(path))
    assert group.order == 4
    assert expression is None


def test_resolve_source_catalog_and_expression() -> None:
    group, expression = resolve_source("S3xC2")
    assert group.order == 12
    assert expression == "S(3) * C(2)"
    group, expression = resolve_source("C(2)*C(3)")
    assert group.order == 6
    assert expression == "C(2) * C(3)"
    with pytest.raises(DslSyntaxError):
        resolve_source("S3x")


def test_compute_report_uses_the_cache(tmp_path: Path) -> None:
    first = compute_report("S(3)", [InvariantId.CENT], cache_root=tmp_path)
    assert len(list(tmp_path.glob("*.json"))) == 1
    second = compute_report("S(3)", [InvariantId.CENT], cache_root=tmp_path)
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
    assert first["invariants"] == {"centralizer_rank": "3"}


def test_compute_report_with_timings_skips_the_cache(tmp_path: Path) -> None:
    data = compute_report("C(4)", [InvariantId.MAX], cache_root=tmp_path, timings=True)
    assert "elapsed_ms" in data
    assert not list(tmp_path.glob("*.json"))


def test_compute_report_with_marking_seed() -> None:
    data = compute_report("S(3)", list(InvariantId), marking_seed=3)
    assert data["marking"]["seed"] == 3
    assert data["marking"]["length"] >= 6
    assert data["invariants"]["deg"] == 5


def test_compute_tree_formats() -> None:
    data = json.loads(compute_tree("S(3)", InvariantId.MAX))
    assert data["nodes"][0] == {"key": "<>", "rank": "2"}
    assert compute_tree("S(3)", InvariantId.CENT, output_format=FORMAT_DOT).startswith(
        "digraph tree {"
    )
    graphml = compute_tree("S(3)", InvariantId.XI, 5, FORMAT_GRAPHML)
    assert graphml.startswith("<?xml")


def test_compute_tree_explicit() -> None:
    data = json.loads(compute_tree("S(3)", InvariantId.XI, 1, FORMAT_JSON, explicit=6))
    assert data["rank"] == "3"
    assert data["nodes"][0] == []
    dot = compute_tree("S(3)", InvariantId.XI, 5, FORMAT_DOT, explicit=6)
    assert '"()" -> "(0)";' in dot


def test_compute_chain() -> None:
    assert compute_chain("D4", InvariantId.MAXN)["length"] == 3
    with pytest.raises(ValueError):
        compute_chain("D4", InvariantId.XI)


async def test_async_make_report(tmp_path: Path) -> None:
    api = ChainRank(cache=ResultCache(tmp_path))
    data = await api.async_make_report("Q8", [InvariantId.CENT])
    assert data["invariants"] == {"centralizer_rank": "3"}
    assert data["expression"] == "Q8"


async def test_async_make_tree_and_chain() -> None:
    api = ChainRank()
    rendered = await api.async_make_tree("C(2)", InvariantId.MAXN)
    assert json.loads(rendered)["nodes"][0]["rank"] == "1"
    chain = await api.async_make_chain("S4", InvariantId.MAX)
    assert chain["length"] == 4


async def test_async_errors_propagate() -> None:
    api = ChainRank()
    with pytest.raises(DslSyntaxError):
        await api.async_make_report("nope(")
    with pytest.raises(UnknownGroup):
        await api.async_compute(lookup, "missing")
