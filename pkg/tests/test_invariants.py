"""Tests for the tree invariants of marked groups."""

from __future__ import annotations

import pytest

from chainrank.groups import (
    FinGroup,
    cyclic_group,
    subgroup_closure,
    wreath_product,
)
from chainrank.invariants import (
    DecompositionTreeSpec,
    SymbolicKind,
    centralizer_rank,
    decomposition_degree,
    decomposition_rank,
    decomposition_tree_rank,
    ea_chain_check,
    maxn_length,
    r_n,
    rank_report,
    s_k,
    s_subgroup,
    subgroup_rank,
    subgroup_rank_symbolic,
)
from chainrank.marking import MarkedGroup, default_marking, remark
from chainrank.models import InvariantId
from chainrank.ordinal import OMEGA, ONE, Ordinal
from chainrank.wftree import FunctionTreeSpec, IllFounded, WellFounded


def _ord(value: int) -> Ordinal:
    return Ordinal.finite(value)


def test_s3_invariants(marked_s3: MarkedGroup) -> None:
    assert centralizer_rank(marked_s3) == _ord(3)
    assert subgroup_rank(marked_s3) == _ord(3)
    assert maxn_length(marked_s3) == _ord(3)
    assert decomposition_rank(marked_s3) == _ord(2)
    assert decomposition_degree(marked_s3) == 5


def test_s3_decomposition_trees(marked_s3: MarkedGroup) -> None:
    """The rank drops from 3 to 2 once the offset reaches 5."""
    ranks = [decomposition_tree_rank(marked_s3, offset) for offset in range(1, 7)]
    assert ranks == [_ord(3), _ord(3), _ord(3), _ord(3), _ord(2), _ord(2)]


@pytest.mark.parametrize(
    ("fixture", "cent", "sub", "maxn"),
    [
        ("c2", 1, 2, 2),
        ("klein", 1, 3, 3),
        ("q8", 3, 4, 4),
        ("d4", 3, 4, 4),
        ("s4", 5, 5, 4),
    ],
)
def test_chain_invariants(
    fixture: str, cent: int, sub: int, maxn: int, request: pytest.FixtureRequest
) -> None:
    marked = default_marking(request.getfixturevalue(fixture))
    assert centralizer_rank(marked) == _ord(cent)
    assert subgroup_rank(marked) == _ord(sub)
    assert maxn_length(marked) == _ord(maxn)


def test_trivial_group() -> None:
    marked = default_marking(cyclic_group(1))
    assert centralizer_rank(marked) == ONE
    assert subgroup_rank(marked) == ONE
    assert maxn_length(marked) == ONE
    assert decomposition_rank(marked) == ONE
    assert decomposition_degree(marked) == 1


@pytest.mark.parametrize("fixture", ["c2", "klein"])
def test_abelian_decomposition(fixture: str, request: pytest.FixtureRequest) -> None:
    """Abelian groups have trivial S-subgroups, so every offset gives rank 2."""
    marked = default_marking(request.getfixturevalue(fixture))
    assert decomposition_tree_rank(marked, 1) == _ord(2)
    assert decomposition_rank(marked) == _ord(2)
    assert decomposition_degree(marked) == 1


def test_wreath_of_two_cyclic_groups(c2: FinGroup) -> None:
    marked = default_marking(wreath_product(c2, c2))
    assert marked.order == 8
    assert maxn_length(marked) == _ord(4)


@pytest.mark.parametrize("n", [1, 2, 6, 8, 12, 30])
def test_cyclic_subgroup_rank_matches_closed_form(n: int) -> None:
    computed = subgroup_rank(default_marking(cyclic_group(n)))
    assert computed == subgroup_rank_symbolic(SymbolicKind.CYCLIC, n)


def test_symbolic_ranks() -> None:
    assert subgroup_rank_symbolic(SymbolicKind.INTEGERS) == OMEGA + ONE
    assert subgroup_rank_symbolic(SymbolicKind.CYCLIC, 12) == _ord(4)
    with pytest.raises(ValueError):
        subgroup_rank_symbolic(SymbolicKind.CYCLIC)


def test_prefix_subgroups(marked_s3: MarkedGroup) -> None:
    assert r_n(marked_s3, 0).carrier.is_trivial
    assert r_n(marked_s3, 1).order == 3
    assert r_n(marked_s3, 2).order == 6
    with pytest.raises(ValueError):
        r_n(marked_s3, -1)


def test_s_subgroups(marked_s3: MarkedGroup, s3: FinGroup) -> None:
    assert s_k(marked_s3, 1).order == 3
    assert s_k(marked_s3, 4).order == 3
    assert s_k(marked_s3, 5).carrier.is_trivial
    rotations = subgroup_closure(s3, [1])
    assert s_subgroup(rotations, 1).is_trivial
    with pytest.raises(ValueError):
        s_subgroup(s3.whole, 0)


def test_s_subgroup_of_s4(s4: FinGroup) -> None:
    """[S4, S4] is A4, cut down to V4 once index-6 normals count."""
    assert s_subgroup(s4.whole, 1).order == 12
    assert s_subgroup(s4.whole, 5).order == 4


def test_decomposition_offset_must_be_positive(marked_s3: MarkedGroup) -> None:
    with pytest.raises(ValueError):
        DecompositionTreeSpec(marked_s3, 0)


def test_decomposition_depth_cap(marked_s3: MarkedGroup) -> None:
    spec = DecompositionTreeSpec(marked_s3, 2)
    assert spec.depth_cap == 4
    root = spec.root()
    assert spec.key(root) == (marked_s3.carrier.members, 0)
    assert {child.subgroup.order for child in spec.children(root)} == {1, 3}


def test_ea_chain_check(marked_s3: MarkedGroup) -> None:
    assert isinstance(ea_chain_check(marked_s3), WellFounded)
    looping = FunctionTreeSpec("a", lambda state: ["b" if state == "a" else "a"])
    assert isinstance(ea_chain_check(looping), IllFounded)


@pytest.mark.parametrize("seed", range(5))
def test_invariants_do_not_depend_on_the_marking(
    marked_s3: MarkedGroup, seed: int
) -> None:
    baseline = rank_report(marked_s3).invariants
    shuffled = rank_report(remark(marked_s3, seed)).invariants
    assert shuffled == baseline


def test_rank_report(marked_s3: MarkedGroup) -> None:
    report = rank_report(marked_s3, expression="S(3)")
    assert report.order == 6
    assert report.degree == 3
    assert report.generators == ["(0 1 2)", "(0 1)"]
    assert report.marking_length == 6
    assert report.invariants[InvariantId.CENT] == _ord(3)
    assert report.invariants[InvariantId.XI] == _ord(2)
    assert report.invariants[InvariantId.DEG] == 5
    assert set(report.state_counts) == set(InvariantId)
    assert set(report.elapsed_ms) == set(InvariantId) - {InvariantId.DEG}


def test_rank_report_degree_alone(marked_s3: MarkedGroup) -> None:
    report = rank_report(marked_s3, [InvariantId.DEG])
    assert report.invariants == {InvariantId.DEG: 5}
    assert set(report.elapsed_ms) == {InvariantId.DEG}
