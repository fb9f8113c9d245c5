"""Data classes for chainrank."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING

from .const import (
    DEFAULT_GROUP_LIMIT,
    DEFAULT_NODE_BUDGET,
    DEFAULT_ORACLE_LIMIT,
    DEFAULT_SUBGROUP_LIMIT,
)

if TYPE_CHECKING:
    from .groups import Subgroup
    from .ordinal import Ordinal


class InvariantId(StrEnum):
    """Contain the tree invariants that can be computed."""

    CENT = "cent"
    MAX = "max"
    MAXN = "maxn"
    XI = "xi"
    DEG = "deg"


class Suite(StrEnum):
    """Contain the verification suites."""

    LEMMAS = "lemmas"
    ORACLE = "oracle"
    MARKING = "marking"
    ALL = "all"


@dataclass(frozen=True)
class Limits:
    """Size limits and node budget shared by every computation."""

    group_order: int = DEFAULT_GROUP_LIMIT
    subgroup_order: int = DEFAULT_SUBGROUP_LIMIT
    oracle_order: int = DEFAULT_ORACLE_LIMIT
    node_budget: int = DEFAULT_NODE_BUDGET


@dataclass
class RankReport:
    """Dataclass for the invariants computed for one marked group."""

    order: int
    degree: int
    generators: list[str]
    marking_length: int
    marking_seed: int | None
    invariants: dict[InvariantId, Ordinal | int]
    state_counts: dict[InvariantId, int]
    elapsed_ms: dict[InvariantId, float] = field(default_factory=dict)
    expression: str | None = None


@dataclass
class ChainResult:
    """Dataclass for a longest chain found by an oracle."""

    length: int
    witness: list[Subgroup]


@dataclass(frozen=True)
class CatalogEntry:
    """Dataclass for a built-in catalog group."""

    name: str
    expression: str
    expected_order: int


@dataclass
class VerifyFailure:
    """Dataclass for one failed lemma check."""

    group: str
    lemma: str
    expected: str
    observed: str


@dataclass
class VerifyOutcome:
    """Dataclass for the result of a verification suite."""

    suite: Suite
    cases_run: int = 0
    skipped: int = 0
    failures: list[VerifyFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Return True when no check failed."""
        return not self.failures

    def merge(self, other: VerifyOutcome) -> None:
        """Add the counts and failures of another outcome."""
        self.cases_run += other.cases_run
        self.skipped += other.skipped
        self.failures.extend(other.failures)
