"""Tree invariants of marked groups and the decomposition rank."""

from __future__ import annotations

import logging
import time
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from typing import Any

from sympy import factorint

from .exceptions import ChainRankError, IllFoundedTree
from .groups import (
    FinGroup,
    Subgroup,
    center,
    commutator_subgroup,
    format_cycles,
    low_index_normal_subgroups,
    normal_closure,
    subgroup_closure,
)
from .marking import MarkedGroup, induced_subgroup_marking
from .models import InvariantId, Limits, RankReport
from .ordinal import OMEGA, ONE, Ordinal
from .wftree import (
    IllFounded,
    RankResult,
    StateT,
    TreeSpec,
    WellFounded,
    rank_lazy,
)

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class CentState:
    """Node of the centralizer tree: a centralizer in the carrier."""

    subgroup: Subgroup


@dataclass(frozen=True)
class MaxState:
    """Node of the subgroup tree: the subgroup generated so far."""

    subgroup: Subgroup


@dataclass(frozen=True)
class MaxNState:
    """Node of the max-n tree: the kernel accumulated so far."""

    kernel: Subgroup


@dataclass(frozen=True)
class DecompState:
    """Node of a decomposition tree: a subgroup and its depth."""

    subgroup: Subgroup
    depth: int


def _words(subgroup: Subgroup) -> str:
    parent = subgroup.parent
    return "<" + ",".join(parent.word(gen) for gen in subgroup.generators) + ">"


class MarkedTreeSpec(TreeSpec[StateT]):
    """Tree indexed by the enumeration of one marked group."""

    def __init__(self, marked: MarkedGroup) -> None:
        """Initialize with the marking the tree is indexed by."""
        self.marked = marked
        self.carrier = marked.carrier
        self.group: FinGroup = marked.group
        self._children: dict[Hashable, list[Any]] = {}


class CentralizerTreeSpec(MarkedTreeSpec[CentState]):
    """Centralizers of growing prefix sets, from the carrier down to its center."""

    def __init__(self, marked: MarkedGroup) -> None:
        """Initialize with the marking the tree is indexed by."""
        super().__init__(marked)
        self._center = center(self.carrier)

    def root(self) -> CentState:
        return CentState(self.carrier)

    def key(self, state: CentState) -> Hashable:
        return state.subgroup.members

    def label(self, state: CentState) -> str:
        return _words(state.subgroup)

    def branches(self, state: CentState) -> Sequence[CentState | None]:
        members = state.subgroup.members
        result: list[CentState | None] = []
        for entry in self.marked.enumeration:
            mask = members & self.group.centralizer_mask(entry)
            result.append(None if mask == members else CentState(Subgroup(self.group, mask)))
        return result

    def children(self, state: CentState) -> list[CentState]:
        members = state.subgroup.members
        cached = self._children.get(members)
        if cached is None:
            masks: dict[int, None] = {}
            for entry in self.marked.distinct_entries:
                mask = members & self.group.centralizer_mask(entry)
                if mask != members:
                    masks.setdefault(mask)
            cached = [CentState(Subgroup(self.group, mask)) for mask in masks]
            if not cached and state.subgroup != self._center:
                raise ChainRankError("Centralizer tree stopped above the center")
            self._children[members] = cached
        return cached


class SubgroupTreeSpec(MarkedTreeSpec[MaxState]):
    """Subgroups generated by growing prefix sets, from the trivial group up."""

    def root(self) -> MaxState:
        return MaxState(self.group.trivial)

    def key(self, state: MaxState) -> Hashable:
        return state.subgroup.members

    def label(self, state: MaxState) -> str:
        return _words(state.subgroup)

    def _extend(self, subgroup: Subgroup, entry: int) -> Subgroup:
        return subgroup_closure(self.group, (*subgroup.generators, entry))

    def branches(self, state: MaxState) -> Sequence[MaxState | None]:
        subgroup = state.subgroup
        return [
            None if entry in subgroup else MaxState(self._extend(subgroup, entry))
            for entry in self.marked.enumeration
        ]

    def children(self, state: MaxState) -> list[MaxState]:
        subgroup = state.subgroup
        cached = self._children.get(subgroup.members)
        if cached is None:
            found: dict[int, MaxState] = {}
            covered = subgroup.members
            for entry in self.marked.distinct_entries:
                if covered >> entry & 1:
                    continue
                # <H, g> depends only on the coset Hg.
                for member in subgroup.elements:
                    covered |= 1 << self.group.mul(member, entry)
                larger = self._extend(subgroup, entry)
                found.setdefault(larger.members, MaxState(larger))
            cached = list(found.values())
            if not cached and subgroup != self.carrier:
                raise ChainRankError("Subgroup tree stopped below the carrier")
            self._children[subgroup.members] = cached
        return cached


class MaxNTreeSpec(MarkedTreeSpec[MaxNState]):
    """Normal closures of growing prefix sets; the node's group is carrier/kernel."""

    def root(self) -> MaxNState:
        return MaxNState(self.group.trivial)

    def key(self, state: MaxNState) -> Hashable:
        return state.kernel.members

    def label(self, state: MaxNState) -> str:
        return _words(state.kernel)

    def _extend(self, kernel: Subgroup, entry: int) -> Subgroup:
        return normal_closure(self.carrier, (*kernel.generators, entry))

    def branches(self, state: MaxNState) -> Sequence[MaxNState | None]:
        kernel = state.kernel
        return [
            None if entry in kernel else MaxNState(self._extend(kernel, entry))
            for entry in self.marked.enumeration
        ]

    def children(self, state: MaxNState) -> list[MaxNState]:
        kernel = state.kernel
        cached = self._children.get(kernel.members)
        if cached is None:
            found: dict[int, MaxNState] = {}
            covered = kernel.members
            for entry in self.marked.distinct_entries:
                if covered >> entry & 1:
                    continue
                for member in kernel.elements:
                    covered |= 1 << self.group.mul(member, entry)
                larger = self._extend(kernel, entry)
                found.setdefault(larger.members, MaxNState(larger))
            cached = list(found.values())
            if not cached and kernel != self.carrier:
                raise ChainRankError("Max-n tree stopped below the carrier")
            self._children[kernel.members] = cached
        return cached


def s_subgroup(subgroup: Subgroup, k: int) -> Subgroup:
    """Return the commutator subgroup cut down by every normal subgroup of index <= k+1."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    parent = subgroup.parent
    if subgroup.is_trivial or k + 1 >= subgroup.order:
        return parent.trivial
    cache_key = ("s", subgroup.members, k)
    cached: Subgroup | None = parent.lattice_cache.get(cache_key)
    if cached is None:
        commutators = commutator_subgroup(subgroup)
        mask = commutators.members
        if not commutators.is_trivial:
            for normal in low_index_normal_subgroups(subgroup, k):
                mask &= normal.members
        cached = Subgroup(parent, mask)
        parent.lattice_cache[cache_key] = cached
    return cached


class DecompositionTreeSpec(MarkedTreeSpec[DecompState]):
    """Decomposition tree at a fixed offset.

    A node (H, d) has one child per prefix n, namely the S-subgroup at
    level d + offset of the subgroup generated by the first n + 1 entries
    of the marking restricted to H. Once d + offset reaches the carrier
    order every child is trivial, so depths are capped in the key.
    """

    def __init__(self, marked: MarkedGroup, offset: int) -> None:
        """Initialize with the marking and an offset of at least 1."""
        if offset < 1:
            raise ValueError(f"Offset must be at least 1, got {offset}")
        super().__init__(marked)
        self.offset = offset
        self.depth_cap = max(0, self.carrier.order - offset)
        self._prefixes: dict[int, list[Subgroup]] = {}

    def root(self) -> DecompState:
        return DecompState(self.carrier, 0)

    def key(self, state: DecompState) -> Hashable:
        return (state.subgroup.members, min(state.depth, self.depth_cap))

    def label(self, state: DecompState) -> str:
        return f"{_words(state.subgroup)}@{min(state.depth, self.depth_cap)}"

    def prefix_subgroups(self, subgroup: Subgroup) -> list[Subgroup]:
        """Return the subgroup generated by each prefix of the restricted marking."""
        cached = self._prefixes.get(subgroup.members)
        if cached is None:
            current = self.group.trivial
            cached = []
            for entry in self.marked.enumeration:
                if entry in subgroup and entry not in current:
                    current = subgroup_closure(self.group, (*current.generators, entry))
                cached.append(current)
            self._prefixes[subgroup.members] = cached
        return cached

    def branches(self, state: DecompState) -> Sequence[DecompState | None]:
        if state.subgroup.is_trivial:
            return []
        level = state.depth + self.offset
        return [
            DecompState(s_subgroup(prefix, level), state.depth + 1)
            for prefix in self.prefix_subgroups(state.subgroup)
        ]

    def children(self, state: DecompState) -> list[DecompState]:
        key = self.key(state)
        cached = self._children.get(key)
        if cached is None:
            found: dict[int, DecompState] = {}
            if not state.subgroup.is_trivial:
                level = state.depth + self.offset
                prefixes = {p.members: p for p in self.prefix_subgroups(state.subgroup)}
                for prefix in prefixes.values():
                    child = s_subgroup(prefix, level)
                    found.setdefault(child.members, DecompState(child, state.depth + 1))
            cached = list(found.values())
            self._children[key] = cached
        return cached


def _well_founded(spec: TreeSpec[Any], limits: Limits | None) -> WellFounded:
    outcome = rank_lazy(spec, (limits or Limits()).node_budget)
    if isinstance(outcome, IllFounded):
        raise IllFoundedTree("Tree has an infinite branch", outcome.witness)
    return outcome


def centralizer_rank(marked: MarkedGroup, limits: Limits | None = None) -> Ordinal:
    """Return the rank of the centralizer tree."""
    return _well_founded(CentralizerTreeSpec(marked), limits).rank


def subgroup_rank(marked: MarkedGroup, limits: Limits | None = None) -> Ordinal:
    """Return the rank of the subgroup tree."""
    return _well_founded(SubgroupTreeSpec(marked), limits).rank


def maxn_length(marked: MarkedGroup, limits: Limits | None = None) -> Ordinal:
    """Return the rank of the max-n tree."""
    return _well_founded(MaxNTreeSpec(marked), limits).rank


def r_n(marked: MarkedGroup, n: int) -> MarkedGroup:
    """Return the subgroup generated by the first ``n + 1`` entries, marked."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    prefix = marked.enumeration[: n + 1]
    return induced_subgroup_marking(marked, subgroup_closure(marked.carrier, prefix))


def s_k(marked: MarkedGroup, k: int) -> MarkedGroup:
    """Return the S-subgroup of the carrier at level k, marked."""
    return induced_subgroup_marking(marked, s_subgroup(marked.carrier, k))


def decomposition_tree_rank(
    marked: MarkedGroup, offset: int, limits: Limits | None = None
) -> Ordinal:
    """Return the rank of the decomposition tree at ``offset``."""
    return _well_founded(DecompositionTreeSpec(marked, offset), limits).rank


def _xi_and_degree(
    marked: MarkedGroup, limits: Limits | None
) -> tuple[Ordinal, int, int]:
    """Return the decomposition rank, the degree and the states explored.

    Tree ranks do not increase with the offset and are constant from the
    carrier order on, so the minimum is the rank there and the degree is
    found by bisection.
    """
    top = max(1, marked.order)
    outcome = _well_founded(DecompositionTreeSpec(marked, top), limits)
    xi, states = outcome.rank, outcome.state_count
    low, high = 1, top
    while low < high:
        middle = (low + high) // 2
        candidate = _well_founded(DecompositionTreeSpec(marked, middle), limits)
        states += candidate.state_count
        if candidate.rank == xi:
            high = middle
        else:
            low = middle + 1
    LOGGER.debug("Decomposition rank %s reached at offset %s", xi, low)
    return xi, low, states


def decomposition_rank(marked: MarkedGroup, limits: Limits | None = None) -> Ordinal:
    """Return the least decomposition tree rank over all offsets."""
    return _xi_and_degree(marked, limits)[0]


def decomposition_degree(marked: MarkedGroup, limits: Limits | None = None) -> int:
    """Return the least offset attaining the decomposition rank."""
    return _xi_and_degree(marked, limits)[1]


def ea_chain_check(
    source: MarkedGroup | TreeSpec[Any], limits: Limits | None = None
) -> RankResult:
    """Search the offset-1 decomposition tree for an infinite branch."""
    spec = source if isinstance(source, TreeSpec) else DecompositionTreeSpec(source, 1)
    return rank_lazy(spec, (limits or Limits()).node_budget)


class SymbolicKind(StrEnum):
    """Groups whose subgroup rank is known in closed form."""

    INTEGERS = "Z"
    CYCLIC = "cyclic"


def subgroup_rank_symbolic(kind: SymbolicKind, n: int | None = None) -> Ordinal:
    """Return the subgroup rank of the integers or of a cyclic group of order n."""
    if kind is SymbolicKind.INTEGERS:
        return OMEGA + ONE
    if n is None or n < 1:
        raise ValueError(f"Cyclic groups need an order n >= 1, got {n}")
    return Ordinal.finite(sum(factorint(n).values()) + 1)


def tree_spec(
    marked: MarkedGroup, invariant: InvariantId, offset: int = 1
) -> TreeSpec[Any]:
    """Return the tree behind an invariant; ξ and deg use the decomposition tree."""
    if invariant is InvariantId.CENT:
        return CentralizerTreeSpec(marked)
    if invariant is InvariantId.MAX:
        return SubgroupTreeSpec(marked)
    if invariant is InvariantId.MAXN:
        return MaxNTreeSpec(marked)
    return DecompositionTreeSpec(marked, offset)


def rank_report(
    marked: MarkedGroup,
    invariants: Iterable[InvariantId] = tuple(InvariantId),
    limits: Limits | None = None,
    expression: str | None = None,
) -> RankReport:
    """Compute the requested invariants of one marked group."""
    wanted = list(dict.fromkeys(invariants))
    report = RankReport(
        order=marked.order,
        degree=marked.group.degree,
        generators=[format_cycles(marked.group.elements[g]) for g in marked.carrier.generators],
        marking_length=len(marked.enumeration),
        marking_seed=marked.seed,
        invariants={},
        state_counts={},
        expression=expression,
    )
    spec_classes = {
        InvariantId.CENT: CentralizerTreeSpec,
        InvariantId.MAX: SubgroupTreeSpec,
        InvariantId.MAXN: MaxNTreeSpec,
    }
    for invariant in InvariantId:
        if invariant not in wanted or invariant is InvariantId.DEG:
            continue
        start = time.perf_counter()
        if invariant is InvariantId.XI:
            xi, degree, states = _xi_and_degree(marked, limits)
            report.invariants[InvariantId.XI] = xi
            report.state_counts[InvariantId.XI] = states
            if InvariantId.DEG in wanted:
                report.invariants[InvariantId.DEG] = degree
                report.state_counts[InvariantId.DEG] = states
        else:
            outcome = _well_founded(spec_classes[invariant](marked), limits)
            report.invariants[invariant] = outcome.rank
            report.state_counts[invariant] = outcome.state_count
        report.elapsed_ms[invariant] = (time.perf_counter() - start) * 1000
    if InvariantId.DEG in wanted and InvariantId.DEG not in report.invariants:
        start = time.perf_counter()
        _, degree, states = _xi_and_degree(marked, limits)
        report.invariants[InvariantId.DEG] = degree
        report.state_counts[InvariantId.DEG] = states
        report.elapsed_ms[InvariantId.DEG] = (time.perf_counter() - start) * 1000
    LOGGER.debug("Computed %s for a group of order %s", wanted, marked.order)
    return report
