""" This module decides the structural obstructions to mixability of an enumerable group:
    the subgroup U(G) generated by the elements of 2-power order, odd quotients, and the
    series of subgroups generated by involutions.

    A group with a nontrivial quotient of odd order admits no mixing sequence, so
    `odd_quotient_witness` is a certificate of non-mixability.
"""

from __future__ import annotations
from typing import Any, Dict, FrozenSet, List, NamedTuple, Optional, Tuple
import logging

from groups import CayleyGroup, Element, FiniteGroup, NotNormal, is_normal, is_subgroup, quotient_group, \
    subgroup_closure
from mixing import progress_bar

log = logging.getLogger("structure.analysis")


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _elements_of_order(group: FiniteGroup, accept) -> List[Element]:
    return [g for g in progress_bar(group.enumerate(), desc="Element orders", leave=False)
            if accept(group.element_order(g))]


def two_element_closure(group: FiniteGroup) -> FrozenSet[Element]:
    """ U(G): the subgroup generated by all elements of 2-power order. It is normal and
        of odd index, the smallest such subgroup.
    """
    closure = subgroup_closure(group, _elements_of_order(group, is_power_of_two))
    assert (group.order // len(closure)) % 2 == 1
    return closure


def is_2prime_simple(group: FiniteGroup) -> bool:
    """ True when G has no nontrivial quotient of odd order. """
    return len(two_element_closure(group)) == group.order


def odd_quotient_witness(group: FiniteGroup) -> Optional[Tuple[CayleyGroup, Dict[Element, int]]]:
    """ The quotient G/U(G) with its projection when it is nontrivial, None otherwise. """
    closure = two_element_closure(group)
    if len(closure) == group.order:
        return None
    quotient, projection = quotient_group(group, closure)
    log.debug(f"{group.name} has an odd quotient of order {quotient.order}")
    return quotient, projection


def involution_closure(group: FiniteGroup) -> FrozenSet[Element]:
    return subgroup_closure(group, _elements_of_order(group, lambda k: k == 2))


def is_involution_generated(group: FiniteGroup) -> bool:
    return len(involution_closure(group)) == group.order


class InvolutionSeries(NamedTuple):
    """ I_0 = 1 < I_1 < ... < I_t, each I_{j+1}/I_j generated by the involutions of G/I_j,
        ending when G/I_t has none, so that G/I_t has odd order.
    """
    subgroups: List[FrozenSet[Element]]
    top_quotient: int

    @property
    def orders(self) -> List[int]:
        return [len(s) for s in self.subgroups]


def involution_series(group: FiniteGroup) -> InvolutionSeries:
    current = frozenset([group.identity])
    series = [current]
    while len(current) < group.order:
        quotient, projection = quotient_group(group, current)
        generated = involution_closure(quotient)
        if len(generated) == 1:
            break
        current = frozenset(g for g in group.enumerate() if projection[g] in generated)
        series.append(current)
    top = group.order // len(current)
    assert top % 2 == 1, f"the series of {group.name} stopped at a quotient of even order {top}"
    return InvolutionSeries(series, top)


class StructureReport(NamedTuple):
    order: int
    u_order: int
    odd_quotient: int
    is_2prime_simple: bool
    series_orders: List[int]
    is_involution_generated: bool

    def to_document(self) -> Dict[str, Any]:
        return {
            "order": self.order,
            "u_order": self.u_order,
            "odd_quotient": self.odd_quotient,
            "is_2prime_simple": self.is_2prime_simple,
            "involution_series": self.series_orders,
            "top_quotient": self.order // self.series_orders[-1],
            "is_involution_generated": self.is_involution_generated,
        }


def analyze_structure(group: FiniteGroup) -> StructureReport:
    u = two_element_closure(group)
    series = involution_series(group)
    report = StructureReport(order=group.order, u_order=len(u), odd_quotient=group.order // len(u),
                             is_2prime_simple=len(u) == group.order, series_orders=series.orders,
                             is_involution_generated=series.orders[-1] == group.order and len(series.orders) <= 2)
    log.info(f"analyzed {group.name}: |U(G)| = {report.u_order}, odd quotient {report.odd_quotient}")
    return report


def abelian_by_z2_mixable(group: FiniteGroup, abelian: FrozenSet[Element]) -> bool:
    """ For G = A x| Z/2 with A abelian, G is mixable exactly when it is 2'-simple. """
    members = frozenset(abelian)
    if not is_subgroup(group, members) or 2 * len(members) != group.order:
        raise ValueError("A must be a subgroup of index 2")
    if not is_normal(group, members):
        raise NotNormal("A subgroup of index 2 failed the normality check")
    if any(group.multiply(a, b) != group.multiply(b, a) for a in members for b in members):
        raise ValueError("A is not abelian")
    return is_2prime_simple(group)
