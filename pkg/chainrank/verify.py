"""Property checks run by ``chainrank_cli verify`` over the catalog."""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field

from .catalog import catalog_entries, lookup
from .const import (
    EXPLICIT_CHECK_MAX_ORDER,
    EXPLICIT_NODE_BUDGET,
    LEMMA_MAXN_PRODUCT_MAX_ORDER,
    LEMMA_PRODUCT_MAX_ORDER,
    LEMMA_SUBGROUP_MAX_ORDER,
    LEMMA_SUBTREE_STATE_LIMIT,
    LEMMA_WREATH_MAX_ORDER,
    MARKING_SEEDS_PER_GROUP,
)
from .dsl import Product, Wreath, parse, rk_bound, xi_bound
from .exceptions import ResourceLimit, SizeLimitExceeded
from .groups import (
    FinGroup,
    all_subgroups,
    direct_product,
    normal_subgroups,
    wreath_product,
)
from .invariants import (
    DecompositionTreeSpec,
    DecompState,
    centralizer_rank,
    decomposition_rank,
    decomposition_tree_rank,
    maxn_length,
    rank_report,
    subgroup_rank,
)
from .marking import (
    MarkedGroup,
    default_marking,
    induced_quotient_marking,
    induced_subgroup_marking,
    remark,
)
from .models import CatalogEntry, InvariantId, Limits, Suite, VerifyFailure, VerifyOutcome
from .oracle import (
    explicit_rank_crosscheck,
    longest_centralizer_chain,
    longest_normal_chain,
    longest_subgroup_chain,
)
from .ordinal import Ordinal
from .wftree import WellFounded, subtree_rank

LOGGER = logging.getLogger(__name__)

NONABELIAN_FACTORS = ("S3", "D4", "Q8")
MAXN_FACTORS = ("C2", "C3", "S3")


@dataclass
class _Checker:
    """Collects check results for one catalog entry."""

    suite: Suite
    group: str
    outcome: VerifyOutcome = field(init=False)

    def __post_init__(self) -> None:
        self.outcome = VerifyOutcome(self.suite)

    def check(self, lemma: str, holds: bool, expected: str, observed: str) -> None:
        self.outcome.cases_run += 1
        if not holds:
            LOGGER.debug("%s failed %s: %s vs %s", self.group, lemma, expected, observed)
            self.outcome.failures.append(
                VerifyFailure(self.group, lemma, expected, observed)
            )

    def guarded(self, run: Callable[[], None]) -> None:
        """Run one check group, counting limit overruns as skipped."""
        try:
            run()
        except (ResourceLimit, SizeLimitExceeded) as err:
            LOGGER.debug("%s skipped a check: %s", self.group, err)
            self.outcome.skipped += 1


def _marked(entry: CatalogEntry, limits: Limits) -> tuple[FinGroup, MarkedGroup]:
    group = parse(entry.expression).evaluate({}, limits)
    return group, default_marking(group)


def oracle_checks(entry: CatalogEntry, limits: Limits) -> VerifyOutcome:
    """Compare tree ranks with longest chains and with explicit index trees."""
    checker = _Checker(Suite.ORACLE, entry.name)
    group, marked = _marked(entry, limits)

    def chains() -> None:
        for name, rank, chain in (
            ("cent", centralizer_rank, longest_centralizer_chain),
            ("maxn", maxn_length, longest_normal_chain),
        ):
            value, length = rank(marked, limits), chain(group, limits).length
            checker.check(
                f"{name} rank is longest chain + 1",
                value == Ordinal.finite(length + 1),
                f"{length + 1}",
                f"{value}",
            )

    def subgroup_chain() -> None:
        value = subgroup_rank(marked, limits)
        length = longest_subgroup_chain(group, limits).length
        checker.check(
            "max rank is longest chain + 1",
            value == Ordinal.finite(length + 1),
            f"{length + 1}",
            f"{value}",
        )

    def explicit() -> None:
        for which in (InvariantId.CENT, InvariantId.MAX, InvariantId.MAXN, InvariantId.XI):
            checker.check(
                f"explicit {which} tree rank equals deduplicated rank",
                explicit_rank_crosscheck(marked, which, 1, EXPLICIT_NODE_BUDGET),
                "equal",
                "different",
            )

    checker.guarded(chains)
    checker.guarded(subgroup_chain)
    if group.order <= EXPLICIT_CHECK_MAX_ORDER:
        checker.guarded(explicit)
    return checker.outcome


def marking_checks(entry: CatalogEntry, seed: int, limits: Limits) -> VerifyOutcome:
    """Check that every invariant is unchanged by seeded re-markings."""
    checker = _Checker(Suite.MARKING, entry.name)
    _, marked = _marked(entry, limits)

    def run() -> None:
        baseline = rank_report(marked, tuple(InvariantId), limits).invariants
        for offset in range(MARKING_SEEDS_PER_GROUP):
            marking_seed = seed * MARKING_SEEDS_PER_GROUP + offset
            observed = rank_report(remark(marked, marking_seed), tuple(InvariantId), limits)
            for invariant, value in baseline.items():
                checker.check(
                    f"{invariant} independent of marking (seed {marking_seed})",
                    observed.invariants[invariant] == value,
                    str(value),
                    str(observed.invariants[invariant]),
                )

    checker.guarded(run)
    return checker.outcome


def _subgroup_monotonicity(
    checker: _Checker, marked: MarkedGroup, limits: Limits
) -> None:
    cent, sub = centralizer_rank(marked, limits), subgroup_rank(marked, limits)
    xi = decomposition_rank(marked, limits)
    for subgroup in all_subgroups(marked.carrier, limits):
        induced = induced_subgroup_marking(marked, subgroup)
        for lemma, small, large in (
            ("cent monotone under subgroups", centralizer_rank(induced, limits), cent),
            ("max monotone under subgroups", subgroup_rank(induced, limits), sub),
            ("xi monotone under subgroups", decomposition_rank(induced, limits), xi),
        ):
            checker.check(lemma, small <= large, f"<= {large}", str(small))


def maxn_factors(group: FinGroup) -> list[CatalogEntry]:
    """Return the factors S for which maxn(G x S) > maxn(G) is checked."""
    factors = [lookup(name) for name in MAXN_FACTORS]
    return [
        factor
        for factor in factors
        if group.order * factor.expected_order <= LEMMA_MAXN_PRODUCT_MAX_ORDER
    ]


def _product_strictness(
    checker: _Checker, entry: CatalogEntry, group: FinGroup, limits: Limits
) -> None:
    if entry.name in NONABELIAN_FACTORS:
        for other in catalog_entries(LEMMA_PRODUCT_MAX_ORDER):
            factor = parse(other.expression).evaluate({}, limits)
            product = direct_product(group, factor, limits)
            small = centralizer_rank(default_marking(factor), limits)
            large = centralizer_rank(default_marking(product), limits)
            checker.check(
                f"cent({other.name}) < cent({entry.name} x {other.name})",
                small < large,
                f"> {small}",
                str(large),
            )
    base = maxn_length(default_marking(group), limits)
    for other in maxn_factors(group):
        factor = parse(other.expression).evaluate({}, limits)
        extended = direct_product(group, factor, limits)
        larger = maxn_length(default_marking(extended), limits)
        checker.check(
            f"maxn(G x {other.name}) > maxn(G)", larger > base, f"> {base}", str(larger)
        )


def _quotient_behavior(checker: _Checker, marked: MarkedGroup, limits: Limits) -> None:
    length = maxn_length(marked, limits)
    for kernel in normal_subgroups(marked.carrier, limits):
        if kernel == marked.carrier:
            continue
        image = maxn_length(induced_quotient_marking(marked, kernel), limits)
        if kernel.is_trivial:
            checker.check(
                "maxn unchanged by trivial quotient",
                image == length,
                str(length),
                str(image),
            )
        else:
            checker.check(
                f"maxn drops under quotient by order {kernel.order}",
                image < length,
                f"< {length}",
                str(image),
            )


def _wreath_superadditivity(
    checker: _Checker, entry: CatalogEntry, group: FinGroup, limits: Limits
) -> None:
    if group.order == 1:
        return
    base = maxn_length(default_marking(group), limits)
    for other in catalog_entries(LEMMA_WREATH_MAX_ORDER // group.order):
        top = parse(other.expression).evaluate({}, limits)
        if top.order == 1 or group.order**top.degree * top.order > LEMMA_WREATH_MAX_ORDER:
            continue
        wreath = wreath_product(group, top, limits)
        value = maxn_length(default_marking(wreath), limits)
        bound = maxn_length(default_marking(top), limits) + base
        checker.check(
            f"maxn({entry.name} wr {other.name}) >= maxn({other.name}) + maxn({entry.name})",
            value >= bound,
            f">= {bound}",
            str(value),
        )


def subtree_comparisons(
    marked: MarkedGroup,
    limits: Limits,
    state_limit: int = LEMMA_SUBTREE_STATE_LIMIT,
) -> Iterator[tuple[DecompState, Ordinal | None, Ordinal]]:
    """Pair subtrees of the offset-1 decomposition tree with fresh trees.

    Visits up to ``state_limit`` distinct non-root states breadth first and
    yields each with its subtree rank (None when ill-founded) and the rank of
    its subgroup's decomposition tree at offset depth + 1.
    """
    spec = DecompositionTreeSpec(marked, 1)
    root = spec.root()
    seen = {spec.key(root)}
    pending = deque([root])
    visited = 0
    while pending:
        for child in spec.children(pending.popleft()):
            key = spec.key(child)
            if key in seen:
                continue
            if visited >= state_limit:
                return
            seen.add(key)
            pending.append(child)
            visited += 1
            via_tree = subtree_rank(spec, child, limits.node_budget)
            direct = decomposition_tree_rank(
                induced_subgroup_marking(marked, child.subgroup), child.depth + 1, limits
            )
            yield (
                child,
                via_tree.rank if isinstance(via_tree, WellFounded) else None,
                direct,
            )


def _decomposition_checks(
    checker: _Checker, marked: MarkedGroup, exact_rank: int | None, limits: Limits
) -> None:
    order = marked.order
    ranks = [decomposition_tree_rank(marked, offset, limits) for offset in range(1, order + 1)]
    checker.check("rank at offset |G| is at most 2", ranks[-1] <= 2, "<= 2", str(ranks[-1]))
    checker.check(
        "tree rank non-increasing in the offset",
        all(later <= earlier for earlier, later in zip(ranks, ranks[1:], strict=False)),
        "non-increasing",
        ", ".join(str(rank) for rank in ranks),
    )
    checker.check("offset-1 rank is finite", ranks[0].is_finite, "finite", str(ranks[0]))
    xi = min(ranks)
    if exact_rank is not None:
        checker.check(
            "construction rank at most 3 xi",
            Ordinal.finite(exact_rank) <= xi * 3,
            f"<= {xi * 3}",
            str(exact_rank),
        )
    if marked.group.is_abelian() and marked.carrier.is_whole:
        checker.check("abelian offset-1 rank at most 2", ranks[0] <= 2, "<= 2", str(ranks[0]))

    for state, via_tree, direct in subtree_comparisons(marked, limits):
        checker.check(
            f"subtree at order {state.subgroup.order} depth {state.depth}"
            f" equals tree at offset {state.depth + 1}",
            via_tree == direct,
            str(direct),
            "ill-founded" if via_tree is None else str(via_tree),
        )

    if order > 1:
        degree = ranks.index(xi) + 1
        top = DecompositionTreeSpec(marked, degree)
        for child in top.children(top.root()):
            child_xi = decomposition_rank(
                induced_subgroup_marking(marked, child.subgroup), limits
            )
            checker.check(
                f"xi of degree child of order {child.subgroup.order} below xi",
                child_xi < xi,
                f"< {xi}",
                str(child_xi),
            )


def _expression_bounds(
    checker: _Checker, entry: CatalogEntry, marked: MarkedGroup, limits: Limits
) -> None:
    expr = parse(entry.expression)
    bound = rk_bound(expr)
    xi = decomposition_rank(marked, limits)
    checker.check(
        "xi below the expression bound",
        xi <= xi_bound(expr),
        f"<= {xi_bound(expr)}",
        str(xi),
    )
    checker.check(
        "exact construction rank below the structural bound",
        bound.exact == 0 and Ordinal.finite(bound.exact) <= bound.bound,
        f"0 <= {bound.bound}",
        str(bound.exact),
    )
    if isinstance(expr, Product | Wreath):
        checker.check(
            "structural bound of a composite is positive",
            bound.bound >= 1,
            ">= 1",
            str(bound.bound),
        )


def lemma_checks(entry: CatalogEntry, limits: Limits) -> VerifyOutcome:
    """Check the monotonicity, quotient, product, wreath and decomposition properties."""
    checker = _Checker(Suite.LEMMAS, entry.name)
    group, marked = _marked(entry, limits)
    if group.order <= LEMMA_SUBGROUP_MAX_ORDER:
        checker.guarded(lambda: _subgroup_monotonicity(checker, marked, limits))
        checker.guarded(lambda: _quotient_behavior(checker, marked, limits))
    checker.guarded(lambda: _product_strictness(checker, entry, group, limits))
    checker.guarded(lambda: _wreath_superadditivity(checker, entry, group, limits))
    exact_rank = rk_bound(parse(entry.expression)).exact
    checker.guarded(lambda: _decomposition_checks(checker, marked, exact_rank, limits))
    checker.guarded(lambda: _expression_bounds(checker, entry, marked, limits))
    return checker.outcome


def check_entry(suite: Suite, name: str, seed: int, limits: Limits) -> VerifyOutcome:
    """Run one suite on one catalog entry."""
    entry = lookup(name)
    LOGGER.debug("Running %s checks on %s", suite, name)
    if suite is Suite.ORACLE:
        return oracle_checks(entry, limits)
    if suite is Suite.MARKING:
        return marking_checks(entry, seed, limits)
    return lemma_checks(entry, limits)
