"""Finite permutation groups, their subgroups, quotients and constructors."""

from __future__ import annotations

import logging
import math
import re
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from sympy import isprime
from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics import PermutationGroup
from sympy.combinatorics.named_groups import (
    AbelianGroup,
    AlternatingGroup,
    CyclicGroup,
    DihedralGroup,
    SymmetricGroup,
)

from .exceptions import (
    InvalidPermutation,
    NotContained,
    NotNormal,
    ParentMismatch,
    SizeLimitExceeded,
)
from .models import Limits

LOGGER = logging.getLogger(__name__)

Permutation = tuple[int, ...]

IDENTITY = 0

_CYCLE = re.compile(r"\(([^()]*)\)")


def compose(first: Permutation, second: Permutation) -> Permutation:
    """Return the permutation applying ``first`` and then ``second``."""
    return tuple([second[point] for point in first])


def check_permutation(images: Sequence[int], degree: int) -> Permutation:
    """Return ``images`` as a permutation or raise InvalidPermutation."""
    if len(images) != degree or sorted(images) != list(range(degree)):
        raise InvalidPermutation(
            f"{list(images)} is not a permutation of degree {degree}"
        )
    return tuple(images)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``(0 1)(2 3)`` with 0-based points."""
    leftover = _CYCLE.sub("", text).strip()
    if leftover:
        raise InvalidPermutation(f"Unexpected {leftover!r} in cycle text {text!r}")
    cycles: list[list[int]] = []
    seen: set[int] = set()
    for body in _CYCLE.findall(text):
        try:
            points = [int(point) for point in body.replace(",", " ").split()]
        except ValueError as err:
            raise InvalidPermutation(f"Non-integer point in {text!r}") from err
        for point in points:
            if not 0 <= point < degree:
                raise InvalidPermutation(f"Point {point} outside degree {degree}")
            if point in seen:
                raise InvalidPermutation(f"Point {point} repeated in {text!r}")
            seen.add(point)
        if len(points) > 1:
            cycles.append(points)
    if not cycles:
        return tuple(range(degree))
    return tuple(SymPermutation(cycles, size=degree).array_form)


def format_cycles(perm: Permutation) -> str:
    """Render a permutation in cycle notation, ``()`` for the identity."""
    cycles = SymPermutation(list(perm)).cyclic_form
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(point) for point in cycle) + ")" for cycle in cycles)


class FinGroup:
    """Finite permutation group with its elements in breadth-first order.

    Element 0 is the identity. Elements are listed in the order the
    closure reaches them when multiplying by the generators in the given
    order, so the element list (and everything indexed by it) is
    reproducible for a fixed generator list.
    """

    def __init__(
        self,
        degree: int,
        elements: tuple[Permutation, ...],
        generators: tuple[int, ...],
        parents: tuple[tuple[int, int], ...],
    ) -> None:
        """Initialize from a finished closure; use generate_group instead."""
        self.degree = degree
        self.elements = elements
        self.generators = generators
        self._parents = parents
        self._index = {perm: position for position, perm in enumerate(elements)}
        self._inverses: tuple[int, ...] | None = None
        self._centralizers: dict[int, int] = {}
        # Lattices derived from this group, keyed by (kind, member mask).
        self.lattice_cache: dict[tuple[Any, ...], Any] = {}

    @property
    def order(self) -> int:
        """Return the number of elements."""
        return len(self.elements)

    @property
    def generator_perms(self) -> list[Permutation]:
        """Return the generators as permutations."""
        return [self.elements[gen] for gen in self.generators]

    @cached_property
    def whole(self) -> Subgroup:
        """Return the group as a subgroup of itself."""
        return Subgroup(self, (1 << self.order) - 1, seed_generators=self.generators)

    @cached_property
    def trivial(self) -> Subgroup:
        """Return the trivial subgroup."""
        return Subgroup(self, 1, seed_generators=())

    def index(self, perm: Permutation) -> int:
        """Return the position of ``perm`` in the element list."""
        try:
            return self._index[perm]
        except KeyError as err:
            raise NotContained(f"{format_cycles(perm)} is not in the group") from err

    def mul(self, first: int, second: int) -> int:
        """Return the index of ``first * second``."""
        return self._index[compose(self.elements[first], self.elements[second])]

    def inv(self, element: int) -> int:
        """Return the index of the inverse."""
        if self._inverses is None:
            inverses = []
            for perm in self.elements:
                images = [0] * self.degree
                for point, image in enumerate(perm):
                    images[image] = point
                inverses.append(self._index[tuple(images)])
            self._inverses = tuple(inverses)
        return self._inverses[element]

    def conj(self, element: int, by: int) -> int:
        """Return ``by^-1 * element * by``."""
        return self.mul(self.mul(self.inv(by), element), by)

    def commutator(self, first: int, second: int) -> int:
        """Return ``first^-1 * second^-1 * first * second``."""
        return self.mul(
            self.mul(self.inv(first), self.inv(second)), self.mul(first, second)
        )

    def commutes(self, first: int, second: int) -> bool:
        """Return True when the two elements commute."""
        a, b = self.elements[first], self.elements[second]
        return compose(a, b) == compose(b, a)

    def centralizer_mask(self, element: int) -> int:
        """Return the member mask of the centralizer of one element."""
        mask = self._centralizers.get(element)
        if mask is None:
            target = self.elements[element]
            mask = 0
            for position, perm in enumerate(self.elements):
                if compose(perm, target) == compose(target, perm):
                    mask |= 1 << position
            self._centralizers[element] = mask
        return mask

    def element_order(self, element: int) -> int:
        """Return the order of one element."""
        power, count = element, 1
        while power != IDENTITY:
            power = self.mul(power, element)
            count += 1
        return count

    def exponent(self) -> int:
        """Return the least common multiple of the element orders."""
        return math.lcm(*(self.element_order(e) for e in range(self.order)))

    def is_abelian(self) -> bool:
        """Return True when all generators commute."""
        return all(
            self.commutes(a, b) for a in self.generators for b in self.generators
        )

    def word(self, element: int) -> str:
        """Return a shortest word in ``g0, g1, ...`` evaluating to the element."""
        letters: list[str] = []
        while element != IDENTITY:
            element, position = self._parents[element]
            letters.append(f"g{position}")
        return "*".join(reversed(letters)) if letters else "e"

    def __repr__(self) -> str:
        return f"FinGroup(order={self.order}, degree={self.degree})"


def generate_group(
    degree: int, generators: Iterable[Sequence[int]], limits: Limits | None = None
) -> FinGroup:
    """Close a generator list under composition."""
    limits = limits or Limits()
    if degree < 1:
        raise InvalidPermutation(f"Degree must be positive, got {degree}")
    perms = [check_permutation(gen, degree) for gen in generators]
    if perms:
        order = PermutationGroup([SymPermutation(list(perm)) for perm in perms]).order()
        if order > limits.group_order:
            raise SizeLimitExceeded(
                f"Group of order {order} exceeds the limit {limits.group_order}"
            )
    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    parents = [(-1, -1)]
    queue = deque([0])
    while queue:
        current = queue.popleft()
        for position, gen in enumerate(perms):
            image = compose(elements[current], gen)
            if image not in index:
                index[image] = len(elements)
                elements.append(image)
                parents.append((current, position))
                queue.append(index[image])
    LOGGER.debug("Generated group of order %s on %s points", len(elements), degree)
    return FinGroup(
        degree,
        tuple(elements),
        tuple(index[perm] for perm in perms),
        tuple(parents),
    )


@dataclass(frozen=True, repr=False)
class Subgroup:
    """Subgroup of a FinGroup stored as a membership bit mask."""

    parent: FinGroup
    members: int
    seed_generators: tuple[int, ...] | None = field(
        default=None, compare=False, hash=False
    )

    @property
    def order(self) -> int:
        """Return the number of members."""
        return self.members.bit_count()

    def __contains__(self, element: object) -> bool:
        return isinstance(element, int) and bool(self.members >> element & 1)

    @cached_property
    def elements(self) -> tuple[int, ...]:
        """Return the member indices in canonical order."""
        return tuple(e for e in range(self.parent.order) if self.members >> e & 1)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Return a small generating set."""
        if self.seed_generators is not None:
            return tuple(g for g in dict.fromkeys(self.seed_generators) if g != IDENTITY)
        gens: list[int] = []
        mask = 1
        for element in self.elements:
            if not mask >> element & 1:
                gens.append(element)
                mask = _close(self.parent, gens)
        return tuple(gens)

    @property
    def is_trivial(self) -> bool:
        """Return True for the trivial subgroup."""
        return self.members == 1

    @property
    def is_whole(self) -> bool:
        """Return True when the subgroup is the whole parent."""
        return self.members == (1 << self.parent.order) - 1

    def issubset(self, other: Subgroup) -> bool:
        """Return True when every member is also a member of ``other``."""
        if self.parent is not other.parent:
            raise ParentMismatch("Subgroups belong to different groups")
        return self.members & ~other.members == 0

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Order by size, then by member list."""
        return (self.order, self.elements)

    def as_fingroup(self, limits: Limits | None = None) -> FinGroup:
        """Return the subgroup as a standalone group on the same points."""
        return generate_group(
            self.parent.degree,
            [self.parent.elements[gen] for gen in self.generators],
            limits,
        )

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, of={self.parent.order})"


GroupLike = FinGroup | Subgroup


def _ambient(group: GroupLike) -> Subgroup:
    return group.whole if isinstance(group, FinGroup) else group


def _close(group: FinGroup, generators: Iterable[int]) -> int:
    """Return the member mask of the subgroup the generators generate."""
    elements = group.elements
    index = group._index
    gens = [elements[g] for g in dict.fromkeys(generators) if g != IDENTITY]
    mask = 1
    frontier = [IDENTITY]
    while frontier:
        perm = elements[frontier.pop()]
        for gen in gens:
            image = index[tuple([gen[point] for point in perm])]
            if not mask >> image & 1:
                mask |= 1 << image
                frontier.append(image)
    return mask


def _check_members(ambient: Subgroup, elements: Iterable[int]) -> list[int]:
    checked = []
    for element in elements:
        if element not in ambient:
            raise NotContained(f"Element {element} is not in the subgroup")
        checked.append(element)
    return checked


def subgroup_closure(group: GroupLike, seed: Iterable[int]) -> Subgroup:
    """Return the smallest subgroup containing ``seed``."""
    ambient = _ambient(group)
    gens = tuple(dict.fromkeys(_check_members(ambient, seed)))
    return Subgroup(ambient.parent, _close(ambient.parent, gens), seed_generators=gens)


def join(first: Subgroup, second: Subgroup) -> Subgroup:
    """Return the subgroup generated by two subgroups."""
    if first.parent is not second.parent:
        raise ParentMismatch("Subgroups belong to different groups")
    gens = first.generators + second.generators
    return Subgroup(first.parent, _close(first.parent, gens), seed_generators=gens)


def centralizer(group: GroupLike, elements: Iterable[int]) -> Subgroup:
    """Return the members commuting with every given element."""
    ambient = _ambient(group)
    mask = ambient.members
    for element in dict.fromkeys(elements):
        mask &= ambient.parent.centralizer_mask(element)
    return Subgroup(ambient.parent, mask)


def center(group: GroupLike) -> Subgroup:
    """Return the center."""
    ambient = _ambient(group)
    return centralizer(ambient, ambient.generators)


def is_normal(subgroup: Subgroup, group: GroupLike) -> bool:
    """Return True when ``subgroup`` is normal in ``group``."""
    ambient = _ambient(group)
    if not subgroup.issubset(ambient):
        raise NotContained("Subgroup is not contained in the group")
    parent = ambient.parent
    return all(
        parent.conj(element, by) in subgroup
        for by in ambient.generators
        for element in subgroup.generators
    )


def normal_closure(group: GroupLike, seed: Iterable[int]) -> Subgroup:
    """Return the smallest normal subgroup containing ``seed``."""
    ambient = _ambient(group)
    parent = ambient.parent
    gens = [g for g in dict.fromkeys(_check_members(ambient, seed)) if g != IDENTITY]
    mask = _close(parent, gens)
    pending = deque(gens)
    while pending:
        element = pending.popleft()
        for by in ambient.generators:
            conjugate = parent.conj(element, by)
            if not mask >> conjugate & 1:
                gens.append(conjugate)
                pending.append(conjugate)
                mask = _close(parent, gens)
    return Subgroup(parent, mask, seed_generators=tuple(gens))


def commutator_subgroup(group: GroupLike) -> Subgroup:
    """Return the subgroup generated by all commutators."""
    ambient = _ambient(group)
    parent = ambient.parent
    commutators = [
        parent.commutator(a, b) for a in ambient.generators for b in ambient.generators
    ]
    return normal_closure(ambient, commutators)


def intersect(first: Subgroup, second: Subgroup) -> Subgroup:
    """Return the intersection of two subgroups of the same group."""
    if first.parent is not second.parent:
        raise ParentMismatch("Subgroups belong to different groups")
    return Subgroup(first.parent, first.members & second.members)


def conjugacy_classes(group: GroupLike) -> list[tuple[int, ...]]:
    """Return the conjugacy classes, each sorted, ordered by least member."""
    ambient = _ambient(group)
    parent = ambient.parent
    assigned = 0
    classes = []
    for element in ambient.elements:
        if assigned >> element & 1:
            continue
        orbit = {element}
        pending = [element]
        while pending:
            current = pending.pop()
            for by in ambient.generators:
                conjugate = parent.conj(current, by)
                if conjugate not in orbit:
                    orbit.add(conjugate)
                    pending.append(conjugate)
        for member in orbit:
            assigned |= 1 << member
        classes.append(tuple(sorted(orbit)))
    return classes


def _check_size(order: int, limit: int, what: str) -> None:
    if order > limit:
        raise SizeLimitExceeded(f"{what} of a group of order {order} exceeds limit {limit}")


def normal_subgroups(group: GroupLike, limits: Limits | None = None) -> list[Subgroup]:
    """Return every normal subgroup once, sorted by order then members."""
    ambient = _ambient(group)
    _check_size(ambient.order, (limits or Limits()).oracle_order, "Normal subgroups")
    return list(_normal_subgroups(ambient))


def _normal_subgroups(ambient: Subgroup) -> tuple[Subgroup, ...]:
    parent = ambient.parent
    cache_key = ("normal", ambient.members)
    cached: tuple[Subgroup, ...] | None = parent.lattice_cache.get(cache_key)
    if cached is not None:
        return cached
    class_closures: dict[int, Subgroup] = {}
    for conjugacy_class in conjugacy_classes(ambient):
        if conjugacy_class == (IDENTITY,):
            continue
        closure = normal_closure(ambient, conjugacy_class[:1])
        class_closures.setdefault(closure.members, closure)
    # Every normal subgroup is the join of the class closures it contains.
    found = {parent.trivial.members: parent.trivial}
    layer = [parent.trivial]
    while layer:
        next_layer = []
        for normal in layer:
            for closure in class_closures.values():
                if closure.issubset(normal):
                    continue
                joined = join(normal, closure)
                if joined.members not in found:
                    found[joined.members] = joined
                    next_layer.append(joined)
        layer = next_layer
    result = tuple(sorted(found.values(), key=Subgroup.sort_key))
    LOGGER.debug("Found %s normal subgroups in order %s", len(result), ambient.order)
    parent.lattice_cache[cache_key] = result
    return result


def low_index_normal_subgroups(group: GroupLike, k: int) -> list[Subgroup]:
    """Return the normal subgroups of index at most ``k + 1``."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    ambient = _ambient(group)
    return [
        normal
        for normal in _normal_subgroups(ambient)
        if ambient.order // normal.order <= k + 1
    ]


def all_subgroups(group: GroupLike, limits: Limits | None = None) -> list[Subgroup]:
    """Return every subgroup once, sorted by order then members.

    Each subgroup is reached from a smaller one by adjoining a single
    element, one element per right coset of the smaller subgroup.
    """
    ambient = _ambient(group)
    _check_size(ambient.order, (limits or Limits()).subgroup_order, "Subgroup lattice")
    parent = ambient.parent
    cache_key = ("all", ambient.members)
    cached: tuple[Subgroup, ...] | None = parent.lattice_cache.get(cache_key)
    if cached is None:
        found = {parent.trivial.members: parent.trivial}
        pending = deque([parent.trivial])
        while pending:
            subgroup = pending.popleft()
            covered = subgroup.members
            for element in ambient.elements:
                if covered >> element & 1:
                    continue
                for member in subgroup.elements:
                    covered |= 1 << parent.mul(member, element)
                gens = (*subgroup.generators, element)
                larger = Subgroup(parent, _close(parent, gens), seed_generators=gens)
                if larger.members not in found:
                    found[larger.members] = larger
                    pending.append(larger)
        cached = tuple(sorted(found.values(), key=Subgroup.sort_key))
        LOGGER.debug("Found %s subgroups in order %s", len(cached), ambient.order)
        parent.lattice_cache[cache_key] = cached
    return list(cached)


def validate_subgroup(subgroup: Subgroup) -> bool:
    """Check closure of the member mask under multiplication and inversion."""
    parent = subgroup.parent
    if IDENTITY not in subgroup:
        return False
    members = subgroup.elements
    return all(parent.inv(a) in subgroup for a in members) and all(
        parent.mul(a, b) in subgroup for a in members for b in members
    )


class QuotientGroup:
    """Quotient of a group by a normal subgroup, with its projection."""

    def __init__(self, base: Subgroup, kernel: Subgroup) -> None:
        """Initialize the coset table; use quotient() to check normality."""
        parent = base.parent
        self.base = base
        self.kernel = kernel
        self.projection: dict[int, int] = {}
        representatives: list[int] = []
        for element in base.elements:
            if element in self.projection:
                continue
            coset = len(representatives)
            representatives.append(element)
            for member in kernel.elements:
                self.projection[parent.mul(member, element)] = coset
        self.representatives = tuple(representatives)

    @property
    def order(self) -> int:
        """Return the number of cosets."""
        return len(self.representatives)

    def mul(self, first: int, second: int) -> int:
        """Multiply two cosets given by their positions."""
        parent = self.base.parent
        return self.projection[
            parent.mul(self.representatives[first], self.representatives[second])
        ]

    @cached_property
    def _regular(self) -> tuple[FinGroup, tuple[int, ...]]:
        parent = self.base.parent
        reps = self.representatives

        def action(element: int) -> Permutation:
            return tuple(self.projection[parent.mul(rep, element)] for rep in reps)

        group = generate_group(
            len(reps),
            [action(gen) for gen in self.base.generators],
            Limits(group_order=len(reps)),
        )
        return group, tuple(group.index(action(rep)) for rep in reps)

    def as_fingroup(self) -> FinGroup:
        """Return the quotient acting regularly on its cosets."""
        return self._regular[0]

    def project(self, element: int) -> int:
        """Return the image of a base element in ``as_fingroup()``."""
        return self._regular[1][self.projection[element]]


def quotient(group: GroupLike, kernel: Subgroup) -> QuotientGroup:
    """Return ``group / kernel``."""
    ambient = _ambient(group)
    if kernel.parent is not ambient.parent:
        raise ParentMismatch("Kernel belongs to a different group")
    if not is_normal(kernel, ambient):
        raise NotNormal("Kernel is not normal in the group")
    return QuotientGroup(ambient, kernel)


def direct_product(
    first: FinGroup, second: FinGroup, limits: Limits | None = None
) -> FinGroup:
    """Return ``first x second`` acting on disjoint point sets."""
    limits = limits or Limits()
    _check_size(first.order * second.order, limits.group_order, "Direct product")
    shift = first.degree
    degree = first.degree + second.degree
    gens = [perm + tuple(range(shift, degree)) for perm in first.generator_perms]
    gens += [
        tuple(range(shift)) + tuple(point + shift for point in perm)
        for perm in second.generator_perms
    ]
    return generate_group(degree, gens, limits)


def wreath_product(
    base: FinGroup, top: FinGroup, limits: Limits | None = None
) -> FinGroup:
    """Return ``base wr top`` with ``top`` permuting one block per point."""
    limits = limits or Limits()
    blocks = top.degree
    width = base.degree
    _check_size(base.order**blocks * top.order, limits.group_order, "Wreath product")
    degree = blocks * width
    gens = []
    for block in range(blocks):
        for perm in base.generator_perms:
            images = list(range(degree))
            for point in range(width):
                images[block * width + point] = block * width + perm[point]
            gens.append(tuple(images))
    for perm in top.generator_perms:
        gens.append(
            tuple(perm[block] * width + point for block in range(blocks) for point in range(width))
        )
    return generate_group(degree, gens, limits)


def _from_sympy(group: PermutationGroup, limits: Limits | None) -> FinGroup:
    degree = max(group.degree, 1)
    perms = [
        tuple(gen.array_form) + tuple(range(gen.size, degree)) for gen in group.generators
    ]
    return generate_group(degree, perms, limits)


def _check_positive(n: int, name: str) -> None:
    if n < 1:
        raise ValueError(f"{name} needs n >= 1, got {n}")


def cyclic_group(n: int, limits: Limits | None = None) -> FinGroup:
    """Return the cyclic group of order n."""
    _check_positive(n, "C")
    return _from_sympy(CyclicGroup(n), limits)


def symmetric_group(n: int, limits: Limits | None = None) -> FinGroup:
    """Return the symmetric group on n points."""
    _check_positive(n, "S")
    return _from_sympy(SymmetricGroup(n), limits)


def alternating_group(n: int, limits: Limits | None = None) -> FinGroup:
    """Return the alternating group on n points."""
    _check_positive(n, "A")
    return _from_sympy(AlternatingGroup(n), limits)


def dihedral_group(n: int, limits: Limits | None = None) -> FinGroup:
    """Return the dihedral group of order 2n."""
    _check_positive(n, "D")
    return _from_sympy(DihedralGroup(n), limits)


def quaternion_group(limits: Limits | None = None) -> FinGroup:
    """Return the quaternion group in its regular representation."""
    return generate_group(
        8,
        [parse_cycles("(0 1 3 6)(2 5 7 4)", 8), parse_cycles("(0 2 3 7)(1 4 6 5)", 8)],
        limits,
    )


def elementary_abelian_group(p: int, k: int, limits: Limits | None = None) -> FinGroup:
    """Return the elementary abelian group of order p^k."""
    if not isprime(p):
        raise ValueError(f"E needs a prime, got {p}")
    _check_positive(k, "E")
    return _from_sympy(AbelianGroup(*([p] * k)), limits)
