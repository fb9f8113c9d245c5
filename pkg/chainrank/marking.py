"""Marked groups: a carrier subgroup together with a finite enumeration."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from functools import cached_property

from .exceptions import NotContained
from .groups import IDENTITY, FinGroup, GroupLike, Subgroup, quotient

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class MarkedGroup:
    """A carrier subgroup and an enumeration covering it.

    Every entry is a member of the carrier and every member appears at
    least once. Entries are element indices of ``carrier.parent``.
    """

    carrier: Subgroup
    enumeration: tuple[int, ...]
    seed: int | None = None

    def __post_init__(self) -> None:
        """Check membership and surjectivity of the enumeration."""
        covered = 0
        for entry in self.enumeration:
            if entry not in self.carrier:
                raise NotContained(f"Enumeration entry {entry} is outside the carrier")
            covered |= 1 << entry
        if covered != self.carrier.members:
            raise ValueError("Enumeration does not cover the carrier")

    @property
    def group(self) -> FinGroup:
        """Return the group the entries index into."""
        return self.carrier.parent

    @property
    def order(self) -> int:
        """Return the order of the carrier."""
        return self.carrier.order

    @cached_property
    def distinct_entries(self) -> tuple[int, ...]:
        """Return the entries without repeats, in first-seen order."""
        return tuple(dict.fromkeys(self.enumeration))

    def __len__(self) -> int:
        return len(self.enumeration)


def default_marking(group: GroupLike) -> MarkedGroup:
    """Mark a group with its canonical element order."""
    carrier = group.whole if isinstance(group, FinGroup) else group
    return MarkedGroup(carrier, carrier.elements)


def remark(marked: MarkedGroup, seed: int) -> MarkedGroup:
    """Return a seeded shuffle of the canonical list with extra repeats."""
    rng = random.Random(seed)
    members = list(marked.carrier.elements)
    enumeration = members.copy()
    rng.shuffle(enumeration)
    for _ in range(rng.randint(0, len(members))):
        enumeration.insert(rng.randrange(len(enumeration) + 1), rng.choice(members))
    LOGGER.debug("Re-marked order %s with seed %s", marked.order, seed)
    return MarkedGroup(marked.carrier, tuple(enumeration), seed)


def induced_subgroup_marking(marked: MarkedGroup, subgroup: Subgroup) -> MarkedGroup:
    """Restrict a marking to a subgroup, sending non-members to the identity."""
    if not subgroup.issubset(marked.carrier):
        raise NotContained("Subgroup is not contained in the carrier")
    return MarkedGroup(
        subgroup,
        tuple(entry if entry in subgroup else IDENTITY for entry in marked.enumeration),
        marked.seed,
    )


def induced_quotient_marking(marked: MarkedGroup, kernel: Subgroup) -> MarkedGroup:
    """Push a marking through the projection onto ``carrier / kernel``."""
    factor = quotient(marked.carrier, kernel)
    target = factor.as_fingroup()
    return MarkedGroup(
        target.whole,
        tuple(factor.project(entry) for entry in marked.enumeration),
        marked.seed,
    )
