""" Subgroups, closures, cosets, quotients and conjugacy classes of enumerable groups. """

from __future__ import annotations
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Tuple
import logging

from .finite_group import (CayleyGroup, Element, EnumerationBoundExceeded, FiniteGroup, NotASubgroup, NotNormal,
                           get_enumeration_bound)

log = logging.getLogger("groups.subgroups")


class Subgroup(NamedTuple):
    """ A subgroup of an ambient group, known by its order and a membership test.

        `elements` is filled when the subgroup was given (or computed) explicitly, and
        left as None for subgroups defined by a predicate, such as point stabilizers of
        large permutation groups.
    """
    order: int
    contains: Callable[[Element], bool]
    elements: Optional[FrozenSet[Element]] = None

    @staticmethod
    def from_elements(elements: Iterable[Element]) -> Subgroup:
        members = frozenset(elements)
        return Subgroup(order=len(members), contains=members.__contains__, elements=members)

    @staticmethod
    def from_predicate(order: int, contains: Callable[[Element], bool]) -> Subgroup:
        return Subgroup(order=order, contains=contains)

    def members(self, group: FiniteGroup) -> FrozenSet[Element]:
        if self.elements is not None:
            return self.elements
        return frozenset(g for g in group.enumerate() if self.contains(g))


def subgroup_closure(group: FiniteGroup, generators: Iterable[Element]) -> FrozenSet[Element]:
    """ The subgroup generated by `generators`.

        Generators are added one at a time and skipped when already inside the current
        closure, so large redundant generating sets (e.g. all 2-elements of a group) cost
        little beyond the size of the result.
    """
    identity = group.identity
    members = {identity}
    used: List[Element] = []
    bound = get_enumeration_bound()
    mul = group.multiply
    for s in generators:
        if s in members:
            continue
        used.append(s)
        frontier = list(members)
        while frontier:
            nxt = []
            for x in frontier:
                for t in used:
                    y = mul(x, t)
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
            if len(members) > bound:
                raise EnumerationBoundExceeded(f"Subgroup closure exceeded {bound} elements")
    return frozenset(members)


def is_subgroup(group: FiniteGroup, elements: Iterable[Element]) -> bool:
    members = frozenset(elements)
    if group.identity not in members:
        return False
    return subgroup_closure(group, members) == members


def is_normal(group: FiniteGroup, elements: Iterable[Element]) -> bool:
    """ Whether the given subgroup is closed under conjugation by the generators of `group`. """
    members = frozenset(elements)
    return all(group.conjugate(n, g) in members for g in group.generators() for n in members)


class CosetIndex(NamedTuple):
    """ Left cosets gH of a subgroup, indexed so that H itself is coset 0 and the other
        cosets follow the smallest enumeration index of their members.
    """
    representatives: List[Element]
    coset_of: Dict[Element, int]

    def __len__(self) -> int:
        return len(self.representatives)


def left_cosets(group: FiniteGroup, subgroup: Iterable[Element]) -> CosetIndex:
    members = list(subgroup)
    member_set = frozenset(members)
    if group.order % len(member_set):
        raise NotASubgroup(f"{len(member_set)} elements cannot form a subgroup of a group of order {group.order}")
    if not is_subgroup(group, member_set):
        raise NotASubgroup(f"The given {len(member_set)} elements do not form a subgroup of {group.name}")
    coset_of: Dict[Element, int] = {}
    representatives: List[Element] = []

    def add_coset(rep: Element):
        index = len(representatives)
        representatives.append(rep)
        for h in members:
            coset_of[group.multiply(rep, h)] = index

    add_coset(group.identity)
    for g in group.enumerate():
        if g not in coset_of:
            add_coset(g)
    if len(coset_of) != group.order:
        raise NotASubgroup("The given elements do not partition the group into cosets")
    return CosetIndex(representatives, coset_of)


def quotient_group(group: FiniteGroup, normal: Iterable[Element]) -> Tuple[CayleyGroup, Dict[Element, int]]:
    """ The quotient G/N as a Cayley table on coset indices, plus the projection map. """
    members = frozenset(normal)
    if not is_normal(group, members):
        raise NotNormal(f"The given subgroup of order {len(members)} is not normal in {group.name}")
    cosets = left_cosets(group, members)
    reps = cosets.representatives
    table = [[cosets.coset_of[group.multiply(a, b)] for b in reps] for a in reps]
    log.debug(f"quotient of {group.name} by a normal subgroup of order {len(members)} has order {len(reps)}")
    return CayleyGroup(table), cosets.coset_of


def conjugacy_classes(group: FiniteGroup) -> List[List[Element]]:
    """ Conjugacy classes in order of their first element's enumeration index, each class
        listed in enumeration order.
    """
    gens = group.generators()
    assigned: Dict[Element, int] = {}
    classes: List[List[Element]] = []
    for x in group.enumerate():
        if x in assigned:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for s in gens:
                    z = group.conjugate(y, s)
                    if z not in orbit:
                        orbit.add(z)
                        nxt.append(z)
            frontier = nxt
        for y in orbit:
            assigned[y] = len(classes)
        classes.append(sorted(orbit, key=group.index_of))
    return classes


def orbit(generators: Sequence[Element], act: Callable[[Element, Any], Any], start: Any) -> List[Any]:
    """ Orbit of `start` under the group generated by `generators`, in discovery order. """
    seen = {start}
    result = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for s in generators:
                y = act(s, x)
                if y not in seen:
                    seen.add(y)
                    result.append(y)
                    nxt.append(y)
        frontier = nxt
    return result


def cayley_from_group(group: FiniteGroup) -> Tuple[CayleyGroup, List[Element]]:
    """ Converts an enumerable group into a Cayley table. Index 0 is the identity, the
        others follow the group's enumeration order; the returned list maps indices back
        to elements.
    """
    elements = [group.identity] + [g for g in group.enumerate() if g != group.identity]
    index = {g: i for i, g in enumerate(elements)}
    table = [[index[group.multiply(a, b)] for b in elements] for a in elements]
    return CayleyGroup(table), elements


def cayley_from_law(elements: Sequence[Hashable], law: Callable[[Any, Any], Any]) -> CayleyGroup:
    """ Cayley table of the group with the given elements (identity first) and product law. """
    index = {g: i for i, g in enumerate(elements)}
    return CayleyGroup([[index[law(a, b)] for b in elements] for a in elements])
