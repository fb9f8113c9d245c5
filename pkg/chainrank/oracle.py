"""Brute-force longest chains in subgroup lattices."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from typing import Any

from .const import EXPLICIT_NODE_BUDGET
from .exceptions import IllFoundedTree, SizeLimitExceeded
from .groups import (
    GroupLike,
    Subgroup,
    all_subgroups,
    center,
    normal_subgroups,
)
from .invariants import tree_spec
from .marking import MarkedGroup
from .models import ChainResult, InvariantId, Limits
from .wftree import IllFounded, expand_explicit, rank_finite_tree, rank_lazy

LOGGER = logging.getLogger(__name__)


def _ambient(group: GroupLike) -> Subgroup:
    return group if isinstance(group, Subgroup) else group.whole


def _longest_path(
    lattice: Sequence[Subgroup],
    start: Subgroup,
    end: Subgroup,
    step: Callable[[Subgroup, Subgroup], bool],
) -> ChainResult:
    """Return the longest chain from ``start`` to ``end`` following ``step``.

    ``lattice`` is sorted by ``Subgroup.sort_key``; among equally long
    continuations the first in that order wins.
    """
    best: dict[int, tuple[int, Subgroup | None]] = {}

    def longest(node: Subgroup) -> int:
        known = best.get(node.members)
        if known is not None:
            return known[0]
        length, successor = 0, None
        if node.members != end.members:
            length = -1
            for candidate in lattice:
                if step(node, candidate):
                    tail = longest(candidate)
                    if tail >= 0 and tail + 1 > length:
                        length, successor = tail + 1, candidate
        best[node.members] = (length, successor)
        return length

    length = longest(start)
    witness = [start]
    current: Subgroup | None = best[start.members][1]
    while current is not None:
        witness.append(current)
        current = best[current.members][1]
    return ChainResult(length, witness)


def _proper_subset(small: Subgroup, large: Subgroup) -> bool:
    return small.members != large.members and small.members & ~large.members == 0


def centralizer_lattice(group: GroupLike, limits: Limits | None = None) -> list[Subgroup]:
    """Return every centralizer: single-element centralizers closed under intersection."""
    ambient = _ambient(group)
    limits = limits or Limits()
    if ambient.order > limits.oracle_order:
        raise SizeLimitExceeded(
            f"Centralizer lattice of order {ambient.order} exceeds {limits.oracle_order}"
        )
    parent = ambient.parent
    masks = {ambient.members}
    masks.update(ambient.members & parent.centralizer_mask(e) for e in ambient.elements)
    pending = list(masks)
    while pending:
        mask = pending.pop()
        for other in list(masks):
            meet = mask & other
            if meet not in masks:
                masks.add(meet)
                pending.append(meet)
    return sorted((Subgroup(parent, mask) for mask in masks), key=Subgroup.sort_key)


def longest_centralizer_chain(
    group: GroupLike, limits: Limits | None = None
) -> ChainResult:
    """Return a longest strictly decreasing chain of centralizers from the group to its center."""
    ambient = _ambient(group)
    lattice = centralizer_lattice(ambient, limits)
    result = _longest_path(
        lattice, ambient, center(ambient), lambda node, cand: _proper_subset(cand, node)
    )
    LOGGER.debug("Centralizer chain of length %s in order %s", result.length, ambient.order)
    return result


def longest_subgroup_chain(
    group: GroupLike, limits: Limits | None = None
) -> ChainResult:
    """Return a longest strictly increasing chain of subgroups from {e} to the group."""
    ambient = _ambient(group)
    lattice = all_subgroups(ambient, limits)
    return _longest_path(lattice, lattice[0], ambient, _proper_subset)


def longest_normal_chain(group: GroupLike, limits: Limits | None = None) -> ChainResult:
    """Return a longest strictly increasing chain of normal subgroups from {e} to the group."""
    ambient = _ambient(group)
    lattice = normal_subgroups(ambient, limits)
    return _longest_path(lattice, lattice[0], ambient, _proper_subset)


def explicit_rank_crosscheck(
    marked: MarkedGroup,
    which: InvariantId,
    offset: int = 1,
    budget: int = EXPLICIT_NODE_BUDGET,
) -> bool:
    """Compare the deduplicated rank with the rank of the literal index tree."""
    spec = tree_spec(marked, which, offset)
    lazy = rank_lazy(spec, budget)
    if isinstance(lazy, IllFounded):
        raise IllFoundedTree("Tree has an infinite branch", lazy.witness)
    explicit = rank_finite_tree(expand_explicit(spec, len(marked.enumeration), budget))
    LOGGER.debug("Cross-check %s: lazy %s explicit %s", which, lazy.rank, explicit)
    return lazy.rank == explicit


def chain_to_dict(chain: ChainResult) -> dict[str, Any]:
    """Return a chain as its length and the order and generator words of each member."""
    return {
        "length": chain.length,
        "witness": [
            {
                "order": member.order,
                "generators": [member.parent.word(gen) for gen in member.generators],
            }
            for member in chain.witness
        ],
    }
