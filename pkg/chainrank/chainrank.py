"""Module running invariant computations for the CLI and library users."""

from __future__ import annotations

import asyncio
import json
import logging
from collections.abc import Callable, Iterable, Mapping
from concurrent.futures import Executor
from functools import partial
from pathlib import Path
from typing import Any, TypeVar

from .cache import ResultCache, cache_key
from .catalog import CATALOG
from .const import FORMAT_DOT, FORMAT_GRAPHML, FORMAT_JSON
from .dsl import evaluate, parse
from .groups import FinGroup
from .helpers import load_generator_file, report_to_dict
from .invariants import rank_report, tree_spec
from .marking import MarkedGroup, default_marking, remark
from .models import InvariantId, Limits
from .oracle import (
    chain_to_dict,
    longest_centralizer_chain,
    longest_normal_chain,
    longest_subgroup_chain,
)
from .wftree import FiniteTree, expand_explicit, rank_finite_tree, tree_to_dag

LOGGER = logging.getLogger(__name__)

_T = TypeVar("_T")


def resolve_source(
    source: str,
    bindings: Mapping[str, int] | None = None,
    limits: Limits | None = None,
) -> tuple[FinGroup, str | None]:
    """Load a generator file, a catalog name or an expression.

    Returns the group and the canonical expression text, None for files.
    """
    path = Path(source)
    if path.is_file():
        LOGGER.debug("Loading generator file %s", path)
        return load_generator_file(path, limits), None
    text = next((entry.expression for entry in CATALOG if entry.name == source), source)
    expr = parse(text)
    return evaluate(expr, bindings, limits), expr.render()


def resolve_marked(
    source: str,
    marking_seed: int | None = None,
    bindings: Mapping[str, int] | None = None,
    limits: Limits | None = None,
) -> tuple[MarkedGroup, str | None]:
    """Resolve a source and mark it, re-marked when a seed is given."""
    group, expression = resolve_source(source, bindings, limits)
    marked = default_marking(group)
    if marking_seed is not None:
        marked = remark(marked, marking_seed)
    return marked, expression


def compute_report(
    source: str,
    invariants: Iterable[InvariantId],
    marking_seed: int | None = None,
    bindings: Mapping[str, int] | None = None,
    limits: Limits | None = None,
    cache_root: Path | None = None,
    timings: bool = False,
) -> dict[str, Any]:
    """Return the JSON report for one source, using the cache when given."""
    wanted = list(dict.fromkeys(invariants))
    marked, expression = resolve_marked(source, marking_seed, bindings, limits)
    cache = ResultCache(cache_root) if cache_root is not None and not timings else None
    key = cache_key(marked, wanted, expression)
    if cache is not None and (cached := cache.read(key)) is not None:
        return cached
    report = rank_report(marked, wanted, limits, expression)
    data = report_to_dict(report, timings)
    if cache is not None:
        cache.write(key, data)
    return data


def finite_tree_to_dict(tree: FiniteTree) -> dict[str, Any]:
    """Return an explicit tree as its sorted node list and rank."""
    return {
        "nodes": [list(node) for node in sorted(tree.nodes, key=lambda n: (len(n), n))],
        "rank": str(rank_finite_tree(tree)),
    }


def _finite_tree_to_dot(tree: FiniteTree) -> str:
    def name(node: tuple[int, ...]) -> str:
        return json.dumps("(" + ",".join(str(i) for i in node) + ")")

    nodes = sorted(tree.nodes, key=lambda n: (len(n), n))
    lines = ["digraph tree {"]
    lines.extend(f"  {name(node)};" for node in nodes)
    lines.extend(f"  {name(node[:-1])} -> {name(node)};" for node in nodes if node)
    lines.append("}")
    return "\n".join(lines) + "\n"


def compute_tree(
    source: str,
    invariant: InvariantId,
    offset: int = 1,
    output_format: str = FORMAT_JSON,
    explicit: int | None = None,
    marking_seed: int | None = None,
    bindings: Mapping[str, int] | None = None,
    limits: Limits | None = None,
) -> str:
    """Return a tree in the requested format, deduplicated unless explicit."""
    limits = limits or Limits()
    marked, _ = resolve_marked(source, marking_seed, bindings, limits)
    spec = tree_spec(marked, invariant, offset)
    if explicit is not None:
        tree = expand_explicit(spec, explicit, limits.node_budget)
        if output_format == FORMAT_DOT:
            return _finite_tree_to_dot(tree)
        return json.dumps(finite_tree_to_dict(tree), indent=4) + "\n"
    dag = tree_to_dag(spec, limits.node_budget)
    if output_format == FORMAT_DOT:
        return dag.to_dot()
    if output_format == FORMAT_GRAPHML:
        return dag.to_graphml()
    return json.dumps(dag.to_json(), indent=4) + "\n"


_CHAINS = {
    InvariantId.CENT: longest_centralizer_chain,
    InvariantId.MAX: longest_subgroup_chain,
    InvariantId.MAXN: longest_normal_chain,
}


def compute_chain(
    source: str,
    invariant: InvariantId,
    bindings: Mapping[str, int] | None = None,
    limits: Limits | None = None,
) -> dict[str, Any]:
    """Return the longest chain for cent, max or maxn as JSON data."""
    if invariant not in _CHAINS:
        raise ValueError(f"No chain oracle for {invariant}")
    group, _ = resolve_source(source, bindings, limits)
    return chain_to_dict(_CHAINS[invariant](group, limits))


class ChainRank:
    """Class used to run computations off the event loop."""

    def __init__(
        self,
        executor: Executor | None = None,
        limits: Limits | None = None,
        cache: ResultCache | None = None,
    ) -> None:
        """Initialize ChainRank object; no executor means the loop default."""
        self._executor = executor
        self.limits = limits or Limits()
        self.cache = cache

    async def async_compute(self, func: Callable[..., _T], *args: Any) -> _T:
        """Run a module-level function in the executor and await the result."""
        loop = asyncio.get_running_loop()
        LOGGER.debug("Scheduling %s", getattr(func, "__name__", func))
        return await loop.run_in_executor(self._executor, partial(func, *args))

    async def async_make_report(
        self,
        source: str,
        invariants: Iterable[InvariantId] = tuple(InvariantId),
        marking_seed: int | None = None,
        bindings: Mapping[str, int] | None = None,
        timings: bool = False,
    ) -> dict[str, Any]:
        """Compute the invariant report of a source."""
        cache_root = self.cache.root if self.cache is not None else None
        return await self.async_compute(
            compute_report,
            source,
            tuple(invariants),
            marking_seed,
            dict(bindings or {}),
            self.limits,
            cache_root,
            timings,
        )

    async def async_make_tree(
        self,
        source: str,
        invariant: InvariantId,
        offset: int = 1,
        output_format: str = FORMAT_JSON,
        explicit: int | None = None,
        marking_seed: int | None = None,
        bindings: Mapping[str, int] | None = None,
    ) -> str:
        """Render the tree behind an invariant."""
        return await self.async_compute(
            compute_tree,
            source,
            invariant,
            offset,
            output_format,
            explicit,
            marking_seed,
            dict(bindings or {}),
            self.limits,
        )

    async def async_make_chain(
        self,
        source: str,
        invariant: InvariantId,
        bindings: Mapping[str, int] | None = None,
    ) -> dict[str, Any]:
        """Compute a longest chain with the brute-force oracle."""
        return await self.async_compute(
            compute_chain, source, invariant, dict(bindings or {}), self.limits
        )


class ChainRankBase:
    """Base class for services built on a shared ChainRank."""

    def __init__(self, api: ChainRank) -> None:
        """Initialize ChainRank Base."""
        self._api = api
