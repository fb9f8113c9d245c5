"""Ranks of well-founded trees, explicit and lazily presented."""

from __future__ import annotations

import json
import logging
from abc import ABC, abstractmethod
from collections import deque
from collections.abc import Callable, Hashable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Any, Generic, TypeVar

from lxml import etree

from .const import DEFAULT_NODE_BUDGET, EXPLICIT_NODE_BUDGET, GRAPHML_NAMESPACE
from .exceptions import ResourceLimit
from .ordinal import ZERO, Ordinal, ord_succ

LOGGER = logging.getLogger(__name__)

StateT = TypeVar("StateT")

Node = tuple[int, ...]


@dataclass(frozen=True)
class FiniteTree:
    """A finite set of integer sequences closed under initial segments."""

    nodes: frozenset[Node] = frozenset()

    def __post_init__(self) -> None:
        """Reject sets that are not closed under initial segments."""
        for node in self.nodes:
            if node and node[:-1] not in self.nodes:
                raise ValueError(f"{node} is in the tree but {node[:-1]} is not")

    def node_ranks(self) -> dict[Node, int]:
        """Return the rank of every node; leaves have rank 0."""
        ranks = dict.fromkeys(self.nodes, 0)
        for node in sorted(self.nodes, key=len, reverse=True):
            if node:
                parent = node[:-1]
                ranks[parent] = max(ranks[parent], ranks[node] + 1)
        return ranks

    def subtree(self, node: Node) -> FiniteTree:
        """Return the tree of extensions of ``node``, re-rooted."""
        size = len(node)
        return FiniteTree(
            frozenset(other[size:] for other in self.nodes if other[:size] == node)
        )

    def __len__(self) -> int:
        return len(self.nodes)


def rank_finite_tree(tree: FiniteTree) -> Ordinal:
    """Return the rank of a finite tree: 0 when empty, else root rank + 1."""
    if not tree.nodes:
        return ZERO
    return Ordinal.finite(tree.node_ranks()[()] + 1)


class TreeSpec(ABC, Generic[StateT]):
    """A tree presented by a root state and a child function.

    Children of a node depend only on its state key, so two nodes with
    equal keys root identical subtrees. Duplicate children therefore
    contribute nothing to a supremum and ``children`` may drop them.
    """

    @abstractmethod
    def root(self) -> StateT:
        """Return the root state."""

    @abstractmethod
    def key(self, state: StateT) -> Hashable:
        """Return the canonical key of a state."""

    @abstractmethod
    def branches(self, state: StateT) -> Sequence[StateT | None]:
        """Return the child for each index, None where there is no child."""

    def children(self, state: StateT) -> list[StateT]:
        """Return the children with one state per key."""
        unique: dict[Hashable, StateT] = {}
        for child in self.branches(state):
            if child is not None:
                unique.setdefault(self.key(child), child)
        return list(unique.values())

    def label(self, state: StateT) -> str:
        """Return a readable label, unique per key."""
        return str(self.key(state))


class FunctionTreeSpec(TreeSpec[Hashable]):
    """Tree spec over hashable states given by a branch function."""

    def __init__(
        self,
        root: Hashable,
        branch: Callable[[Hashable], Sequence[Hashable | None]],
    ) -> None:
        """Initialize with the root state and the branch function."""
        self._root = root
        self._branch = branch

    def root(self) -> Hashable:
        return self._root

    def key(self, state: Hashable) -> Hashable:
        return state

    def branches(self, state: Hashable) -> Sequence[Hashable | None]:
        return self._branch(state)


@dataclass
class WellFounded:
    """Rank of a well-founded tree and the number of distinct states."""

    rank: Ordinal
    state_count: int


@dataclass
class IllFounded:
    """Cyclic path of state keys; the first and last keys are equal."""

    witness: tuple[Hashable, ...]


RankResult = WellFounded | IllFounded


@dataclass
class _Frame(Generic[StateT]):
    state: StateT
    key: Hashable
    pending: Iterator[StateT]
    best: Ordinal = ZERO


@dataclass
class _Exploration(Generic[StateT]):
    root_key: Hashable
    ranks: dict[Hashable, Ordinal] = field(default_factory=dict)
    states: dict[Hashable, StateT] = field(default_factory=dict)


def _explore(
    spec: TreeSpec[StateT], root: StateT, budget: int
) -> _Exploration[StateT] | IllFounded:
    """Rank every state reachable from ``root`` by depth-first search."""
    root_key = spec.key(root)
    result: _Exploration[StateT] = _Exploration(root_key)
    path: list[Hashable] = [root_key]
    on_path = {root_key}
    frames = [_Frame(root, root_key, iter(spec.children(root)))]
    visited = 1
    while frames:
        frame = frames[-1]
        for child in frame.pending:
            child_key = spec.key(child)
            known = result.ranks.get(child_key)
            if known is not None:
                frame.best = max(frame.best, ord_succ(known))
                continue
            if child_key in on_path:
                start = path.index(child_key)
                return IllFounded((*path[start:], child_key))
            visited += 1
            if visited > budget:
                raise ResourceLimit(f"Tree exploration exceeded {budget} states")
            frames.append(_Frame(child, child_key, iter(spec.children(child))))
            path.append(child_key)
            on_path.add(child_key)
            break
        else:
            frames.pop()
            path.pop()
            on_path.discard(frame.key)
            result.ranks[frame.key] = frame.best
            result.states[frame.key] = frame.state
            if frames:
                frames[-1].best = max(frames[-1].best, ord_succ(frame.best))
    LOGGER.debug("Explored %s distinct states", len(result.ranks))
    return result


def rank_lazy(spec: TreeSpec[Any], budget: int = DEFAULT_NODE_BUDGET) -> RankResult:
    """Return the rank of a lazily presented tree or a cyclic witness."""
    return subtree_rank(spec, spec.root(), budget)


def subtree_rank(
    spec: TreeSpec[StateT], state: StateT, budget: int = DEFAULT_NODE_BUDGET
) -> RankResult:
    """Return the rank of the subtree rooted at ``state``."""
    explored = _explore(spec, state, budget)
    if isinstance(explored, IllFounded):
        return explored
    return WellFounded(ord_succ(explored.ranks[explored.root_key]), len(explored.ranks))


def expand_explicit(
    spec: TreeSpec[Any],
    index_bound: int | None = None,
    budget: int = EXPLICIT_NODE_BUDGET,
) -> FiniteTree:
    """Materialize the index-labelled tree, duplicates included."""
    nodes: set[Node] = {()}
    pending: deque[tuple[Node, Any]] = deque([((), spec.root())])
    while pending:
        node, state = pending.popleft()
        branches = spec.branches(state)
        if index_bound is not None:
            branches = branches[:index_bound]
        for position, child in enumerate(branches):
            if child is None:
                continue
            child_node = (*node, position)
            nodes.add(child_node)
            if len(nodes) > budget:
                raise ResourceLimit(f"Explicit tree exceeded {budget} nodes")
            pending.append((child_node, child))
    LOGGER.debug("Expanded explicit tree with %s nodes", len(nodes))
    return FiniteTree(frozenset(nodes))


@dataclass
class DagExport:
    """Distinct states of a tree with their ranks and child links."""

    nodes: list[tuple[str, Ordinal]]
    edges: list[tuple[str, str]]

    def to_json(self) -> dict[str, Any]:
        """Return ``{nodes: [{key, rank}], edges: [[from, to]]}``."""
        return {
            "nodes": [{"key": key, "rank": str(rank)} for key, rank in self.nodes],
            "edges": [[source, target] for source, target in self.edges],
        }

    def to_dot(self) -> str:
        """Return a DOT digraph with one node per state."""
        lines = ["digraph tree {"]
        lines.extend(
            f"  {json.dumps(key)} [label={json.dumps(f'{key} rank {rank}')}];"
            for key, rank in self.nodes
        )
        lines.extend(
            f"  {json.dumps(source)} -> {json.dumps(target)};"
            for source, target in self.edges
        )
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_graphml(self) -> str:
        """Return the DAG as a GraphML document."""

        def tag(name: str) -> str:
            return f"{{{GRAPHML_NAMESPACE}}}{name}"

        root = etree.Element(tag("graphml"), nsmap={None: GRAPHML_NAMESPACE})
        rank_key = etree.SubElement(root, tag("key"))
        rank_key.attrib["id"] = "rank"
        rank_key.attrib["for"] = "node"
        rank_key.attrib["attr.name"] = "rank"
        rank_key.attrib["attr.type"] = "string"
        graph = etree.SubElement(root, tag("graph"))
        graph.attrib["id"] = "tree"
        graph.attrib["edgedefault"] = "directed"
        for key, rank in self.nodes:
            node = etree.SubElement(graph, tag("node"))
            node.attrib["id"] = key
            data = etree.SubElement(node, tag("data"))
            data.attrib["key"] = "rank"
            data.text = str(rank)
        for source, target in self.edges:
            edge = etree.SubElement(graph, tag("edge"))
            edge.attrib["source"] = source
            edge.attrib["target"] = target
        return etree.tostring(
            root, pretty_print=True, xml_declaration=True, encoding="UTF-8"
        ).decode("utf-8")


def tree_to_dag(
    spec: TreeSpec[StateT], budget: int = DEFAULT_NODE_BUDGET
) -> DagExport:
    """Export the distinct states in breadth-first order from the root."""
    explored = _explore(spec, spec.root(), budget)
    if isinstance(explored, IllFounded):
        raise ResourceLimit("Tree is ill-founded and has no finite export")
    labels = {key: spec.label(state) for key, state in explored.states.items()}
    nodes: list[tuple[str, Ordinal]] = []
    edges: list[tuple[str, str]] = []
    seen = {explored.root_key}
    pending = deque([explored.root_key])
    while pending:
        key = pending.popleft()
        nodes.append((labels[key], explored.ranks[key]))
        for child in spec.children(explored.states[key]):
            child_key = spec.key(child)
            edges.append((labels[key], labels[child_key]))
            if child_key not in seen:
                seen.add(child_key)
                pending.append(child_key)
    return DagExport(nodes, edges)
