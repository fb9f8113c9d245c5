"""Tests for well-founded tree ranks."""

from __future__ import annotations

from collections.abc import Hashable
from random import Random

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings
from lxml import etree

from chainrank.const import GRAPHML_NAMESPACE
from chainrank.exceptions import ResourceLimit
from chainrank.ordinal import ZERO, Ordinal, ord_sup
from chainrank.wftree import (
    FiniteTree,
    FunctionTreeSpec,
    IllFounded,
    Node,
    WellFounded,
    expand_explicit,
    rank_finite_tree,
    rank_lazy,
    subtree_rank,
    tree_to_dag,
)


def _tree(*nodes: tuple[int, ...]) -> FiniteTree:
    return FiniteTree(frozenset(nodes))


@pytest.mark.parametrize(
    ("tree", "rank"),
    [
        (FiniteTree(), 0),
        (_tree(()), 1),
        (_tree((), (0,), (1,)), 2),
        (_tree((), (0,), (0, 0), (1,)), 3),
        (_tree((), (0,), (0, 0), (0, 0, 0), (1,), (1, 0)), 4),
    ],
)
def test_finite_tree_rank(tree: FiniteTree, rank: int) -> None:
    assert rank_finite_tree(tree) == Ordinal.finite(rank)


def test_finite_tree_requires_prefix_closure() -> None:
    with pytest.raises(ValueError):
        _tree((), (0, 1))


def test_subtree() -> None:
    tree = _tree((), (0,), (0, 0), (1,))
    assert tree.subtree((0,)) == _tree((), (0,))
    assert len(tree) == 4


def _countdown(state: Hashable) -> list[Hashable | None]:
    assert isinstance(state, int)
    return [state - 1 if state > 0 else None, None]


def test_lazy_rank_of_a_path() -> None:
    result = rank_lazy(FunctionTreeSpec(4, _countdown))
    assert isinstance(result, WellFounded)
    assert result.rank == Ordinal.finite(5)
    assert result.state_count == 5


def test_lazy_rank_shares_equal_states() -> None:
    """Every state below n branches to all smaller states."""

    def below(state: Hashable) -> list[Hashable | None]:
        assert isinstance(state, int)
        return list(range(state))

    result = rank_lazy(FunctionTreeSpec(12, below))
    assert isinstance(result, WellFounded)
    assert result.rank == Ordinal.finite(13)
    assert result.state_count == 13


def test_cycle_is_reported_with_a_witness() -> None:
    def loop(state: Hashable) -> list[Hashable | None]:
        assert isinstance(state, int)
        return [(state + 1) % 3]

    result = rank_lazy(FunctionTreeSpec(0, loop))
    assert isinstance(result, IllFounded)
    assert result.witness[0] == result.witness[-1]
    assert len(result.witness) == 4


def test_budget_is_enforced() -> None:
    with pytest.raises(ResourceLimit):
        rank_lazy(FunctionTreeSpec(100, _countdown), budget=10)


def test_subtree_rank() -> None:
    spec = FunctionTreeSpec(6, _countdown)
    result = subtree_rank(spec, 2)
    assert isinstance(result, WellFounded)
    assert result.rank == Ordinal.finite(3)


def test_expand_explicit_keeps_duplicates() -> None:
    def two_ways(state: Hashable) -> list[Hashable | None]:
        assert isinstance(state, int)
        return [state - 1, state - 1] if state > 0 else []

    spec = FunctionTreeSpec(3, two_ways)
    tree = expand_explicit(spec)
    assert len(tree) == 1 + 2 + 4 + 8
    assert rank_finite_tree(tree) == rank_lazy(spec).rank  # type: ignore[union-attr]
    assert len(expand_explicit(spec, index_bound=1)) == 4
    with pytest.raises(ResourceLimit):
        expand_explicit(spec, budget=5)


def test_dag_export() -> None:
    def below(state: Hashable) -> list[Hashable | None]:
        assert isinstance(state, int)
        return list(range(state))

    dag = tree_to_dag(FunctionTreeSpec(2, below))
    assert dag.nodes == [("2", Ordinal.finite(2)), ("0", ZERO), ("1", Ordinal.finite(1))]
    assert ("2", "1") in dag.edges
    assert ("1", "0") in dag.edges
    data = dag.to_json()
    assert data["nodes"][0] == {"key": "2", "rank": "2"}
    assert dag.to_dot().startswith("digraph tree {")
    root = etree.fromstring(dag.to_graphml().encode())
    nodes = root.findall(f".//{{{GRAPHML_NAMESPACE}}}node")
    assert len(nodes) == 3


def test_dag_export_rejects_cycles() -> None:
    with pytest.raises(ResourceLimit):
        tree_to_dag(FunctionTreeSpec(0, lambda state: [state]))


@st.composite
def finite_trees(draw: st.DrawFn, max_size: int = 200) -> FiniteTree:
    """Random trees grown by attaching each new node to an existing one."""
    nodes: list[Node] = [()]
    children: dict[Node, int] = {(): 0}
    for _ in range(draw(st.integers(min_value=0, max_value=max_size))):
        parent = nodes[draw(st.integers(min_value=0, max_value=len(nodes) - 1))]
        child = (*parent, children[parent])
        children[parent] += 1
        children[child] = 0
        nodes.append(child)
    return FiniteTree(frozenset(nodes))


def _children(tree: FiniteTree) -> dict[Node, list[Node]]:
    children: dict[Node, list[Node]] = {node: [] for node in tree.nodes}
    for node in sorted(tree.nodes):
        if node:
            children[node[:-1]].append(node)
    return children


def _spec(tree: FiniteTree) -> FunctionTreeSpec:
    children = _children(tree)
    return FunctionTreeSpec((), lambda state: children[state])  # type: ignore[index]


TREE_SETTINGS = settings(max_examples=1000, deadline=None)


@TREE_SETTINGS
@given(finite_trees())
def test_rank_is_one_more_than_the_depth(tree: FiniteTree) -> None:
    depth = max(len(node) for node in tree.nodes)
    assert rank_finite_tree(tree) == Ordinal.finite(depth + 1)


@TREE_SETTINGS
@given(finite_trees(max_size=80))
def test_rank_is_bounded_by_subtrees_at_each_depth(tree: FiniteTree) -> None:
    spec = _spec(tree)
    root = rank_finite_tree(tree)
    depth = max(len(node) for node in tree.nodes)
    for k in range(1, depth + 1):
        below = []
        for node in tree.nodes:
            if len(node) == k:
                result = subtree_rank(spec, node)
                assert isinstance(result, WellFounded)
                below.append(result.rank)
        assert root <= ord_sup(below) + k


@st.composite
def monotone_embeddings(
    draw: st.DrawFn,
) -> tuple[FiniteTree, FiniteTree, dict[Node, Node]]:
    """A tree, a larger tree and a strictly monotone map from the first into it.

    Each node is sent below the image of its parent through a random path,
    and the target also contains an unrelated random tree.
    """
    source = draw(finite_trees(max_size=60))
    padding = st.lists(st.integers(min_value=0, max_value=5), max_size=2)
    image: dict[Node, Node] = {(): tuple(draw(padding))}
    for node in sorted(source.nodes, key=len):
        if node:
            image[node] = (*image[node[:-1]], node[-1], *draw(padding))
    extra = draw(finite_trees(max_size=60))
    target = set(extra.nodes)
    for mapped in image.values():
        target.update(mapped[:length] for length in range(len(mapped) + 1))
    return source, FiniteTree(frozenset(target)), image


@TREE_SETTINGS
@given(monotone_embeddings())
def test_monotone_maps_do_not_raise_rank(
    embedding: tuple[FiniteTree, FiniteTree, dict[Node, Node]],
) -> None:
    source, target, image = embedding
    source_ranks, target_ranks = source.node_ranks(), target.node_ranks()
    for node, mapped in image.items():
        assert source_ranks[node] <= target_ranks[mapped]
    assert rank_finite_tree(source) <= rank_finite_tree(target)


@TREE_SETTINGS
@given(finite_trees(), st.randoms(use_true_random=False))
def test_relabelling_siblings_keeps_the_rank(tree: FiniteTree, rng: Random) -> None:
    """Children may be permuted and renamed to arbitrary distinct labels."""
    children = _children(tree)
    renamed: dict[Node, Node] = {(): ()}
    for node in sorted(tree.nodes, key=len):
        siblings = children[node]
        labels = rng.sample(range(3 * len(siblings) + 1), len(siblings))
        for child, label in zip(siblings, labels, strict=True):
            renamed[child] = (*renamed[node], label)
    relabelled = FiniteTree(frozenset(renamed.values()))
    assert len(relabelled) == len(tree)
    assert rank_finite_tree(relabelled) == rank_finite_tree(tree)


@TREE_SETTINGS
@given(finite_trees())
def test_lazy_and_explicit_ranks_agree(tree: FiniteTree) -> None:
    result = rank_lazy(_spec(tree))
    assert isinstance(result, WellFounded)
    assert result.rank == rank_finite_tree(tree)
    assert rank_finite_tree(expand_explicit(_spec(tree))) == rank_finite_tree(tree)
