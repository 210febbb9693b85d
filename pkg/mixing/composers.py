""" Generic ways to build mixing sequences out of smaller ones.

    Every composer verifies its inputs with the exact (or numeric) fold before composing
    and raises `CompositionRejected` when a precondition fails.
"""

from __future__ import annotations
from fractions import Fraction
from typing import Any, Collection, Iterable, Optional, Union
import logging

from groups import (CosetAction, Element, FiniteGroup, GroupAction, ProductGroup, Subgroup, is_normal, is_subgroup,
                    orbit)

from .engine import action_law, is_uniform, sequence_law, verify
from .probability import DEFAULT_TOLERANCE, MixingError, format_probability
from .sequence import Claim, ClaimKind, MixingSequence

log = logging.getLogger("mixing.composers")


class CompositionRejected(MixingError):
    pass


def _as_subgroup(subgroup: Union[Subgroup, Iterable[Element]]) -> Subgroup:
    if isinstance(subgroup, Subgroup):
        return subgroup
    return Subgroup.from_elements(subgroup)


def _require_uniform_claim(seq: MixingSequence, what: str, tolerance: float):
    report = verify(seq, tolerance=tolerance)
    if not report.uniform:
        raise CompositionRejected(f"{what} is not uniform, max deviation {format_probability(report.max_dev)}")


def compose_extension(group: FiniteGroup, subgroup: Union[Subgroup, Iterable[Element]],
                      sigma_t: MixingSequence, sigma_h: MixingSequence,
                      action: Optional[GroupAction] = None, base: Any = None,
                      tolerance: float = DEFAULT_TOLERANCE) -> MixingSequence:
    """ If sigma_t moves the base point uniformly over a transitive G-set X and sigma_h is
        uniform on the stabilizer H of the base point, then sigma_t ++ sigma_h is uniform
        on G.

        X defaults to the cosets G/H with base point H. `sigma_h` is a sequence over G
        whose elements lie in H. Both sequences are verified before composing.
    """
    h = _as_subgroup(subgroup)
    if action is None:
        action = CosetAction(group, h.members(group))
        base = 0
    if sigma_t.group != group or sigma_h.group != group:
        raise CompositionRejected(f"Both sequences must be over {group.name}")
    if action.size() * h.order != group.order:
        raise CompositionRejected(f"|X| = {action.size()} and |H| = {h.order} do not multiply to |G| = {group.order}")

    coset_law = action_law(sigma_t, action, base)
    uniform, dev = is_uniform(coset_law, tolerance)
    if not uniform:
        raise CompositionRejected(f"The coset mixer is not uniform on the {action.action_id} action, "
                                  f"max deviation {format_probability(dev)}")

    for g in sigma_h.elements():
        if not h.contains(g):
            raise CompositionRejected(f"Subgroup mixer element {group.encode(g)} is not in the subgroup")
        if action.act(g, base) != base:
            raise CompositionRejected(f"Subgroup mixer element {group.encode(g)} does not fix the base point")
    sub_law = sequence_law(sigma_h).with_carrier(h.order)
    uniform, dev = is_uniform(sub_law, tolerance)
    if not uniform:
        raise CompositionRejected(f"The subgroup mixer is not uniform on the subgroup of order {h.order}, "
                                  f"max deviation {format_probability(dev)}")

    log.debug(f"extension over {group.name}: {sigma_t.length} coset steps, {sigma_h.length} subgroup steps")
    return sigma_t.concatenated(sigma_h, claim=Claim.on_group())


def compose_direct_product(first: MixingSequence, second: MixingSequence,
                           tolerance: float = DEFAULT_TOLERANCE) -> MixingSequence:
    """ Mixing sequences of G1 and G2 embedded into G1 × G2 and concatenated. """
    for seq, which in ((first, "first"), (second, "second")):
        if seq.claim.kind != ClaimKind.group:
            raise CompositionRejected(f"The {which} sequence claims an action, not its group")
        _require_uniform_claim(seq, f"The {which} sequence", tolerance)
    product = ProductGroup([first.group, second.group])
    left = first.mapped(product, product.embedding(0))
    right = second.mapped(product, product.embedding(1))
    return left.concatenated(right, claim=Claim.on_group())


def lift_2transitive(group: FiniteGroup, action: GroupAction, x: Any, sigma_h: MixingSequence, a: Element,
                     tolerance: float = DEFAULT_TOLERANCE) -> MixingSequence:
    """ From a mixer of the stabilizer H = Stab(x) on X \\ {x}, mixes X from x in one more
        step: sigma_h ++ [(a, 1 - 1/|X|)] for any a with a·x != x.

        `sigma_h` is an action sequence on the same action. When its base point differs
        from a·x it is conjugated by an element of H carrying its base point to a·x.
    """
    x = action.validate_point(x)
    n = action.size()
    if n < 2:
        raise CompositionRejected("A single point admits no element moving it")
    if not action.is_2transitive():
        raise CompositionRejected(f"The {action.action_id} action of {group.name} is not 2-transitive")
    target = action.act(a, x)
    if target == x:
        raise CompositionRejected(f"{group.encode(a)} fixes the base point, so it lies in the stabilizer")
    claim = sigma_h.claim
    if claim.kind != ClaimKind.action or claim.action is None:
        raise CompositionRejected("The stabilizer mixer must claim an action on the same point set")
    if claim.base == x:
        raise CompositionRejected("The stabilizer mixer must start outside the fixed point")
    for g in sigma_h.elements():
        if action.act(g, x) != x:
            raise CompositionRejected(f"Stabilizer mixer element {group.encode(g)} does not fix the base point")

    if claim.base != target:
        carrier = next((h for h in group.enumerate()
                        if action.act(h, x) == x and action.act(h, claim.base) == target), None)
        if carrier is None:
            raise CompositionRejected("No stabilizer element carries the mixer's base point to a·x")
        sigma_h = sigma_h.conjugated(carrier)
    sigma_h = sigma_h.with_claim(Claim(ClaimKind.action, action, target))

    rest = action_law(sigma_h, action, target)
    if x in rest.masses:
        raise CompositionRejected("The stabilizer mixer reaches the fixed point")
    uniform, dev = is_uniform(rest.with_carrier(n - 1), tolerance)
    if not uniform:
        raise CompositionRejected(f"The stabilizer mixer is not uniform on the remaining {n - 1} points, "
                                  f"max deviation {format_probability(dev)}")

    steps = list(sigma_h.steps) + [(a, 1 - Fraction(1, n))]
    lifted = MixingSequence(group, steps, Claim(ClaimKind.action, action, x))
    log.debug(f"lifted a {sigma_h.length}-step stabilizer mixer to {n} points")
    return lifted


def coarsen_coset_claim(seq: MixingSequence, coarser: Collection[Element],
                        tolerance: float = DEFAULT_TOLERANCE) -> MixingSequence:
    """ A sequence mixing G/H from H also mixes G/K from K for every K containing H. """
    claim = seq.claim
    if claim.kind != ClaimKind.action or not isinstance(claim.action, CosetAction) or claim.base != 0:
        raise CompositionRejected("Only coset claims based at the subgroup itself can be coarsened")
    finer = claim.action.subgroup
    if not finer <= frozenset(coarser):
        raise CompositionRejected("The coarser subgroup does not contain the original one")
    if not is_subgroup(seq.group, coarser):
        raise CompositionRejected("The coarser set is not a subgroup")
    result = seq.with_claim(Claim(ClaimKind.action, CosetAction(seq.group, coarser), 0))
    report = verify(result, tolerance=tolerance)
    if not report.uniform:
        raise CompositionRejected("The coarsened claim does not verify")
    return result


def semidirect_two_orbit_lift(group: FiniteGroup, normal: Collection[Element], complement: Collection[Element],
                              q_mixer: MixingSequence, tolerance: float = DEFAULT_TOLERANCE) -> MixingSequence:
    """ Mixes G = N ⋊ Q when Q acting on N by conjugation has exactly the two orbits {e}
        and N \\ {e}. Then G acts 2-transitively on G/Q, the Q mixer mixes the stabilizer
        of the coset Q on the other cosets, and the lifted coset mixer composes with the
        Q mixer into a mixer of G.
    """
    n_set, q_set = frozenset(normal), frozenset(complement)
    if not is_subgroup(group, n_set) or not is_normal(group, n_set):
        raise CompositionRejected("N is not a normal subgroup")
    if not is_subgroup(group, q_set):
        raise CompositionRejected("Q is not a subgroup")
    if n_set & q_set != {group.identity} or len(n_set) * len(q_set) != group.order:
        raise CompositionRejected("N and Q do not form a semidirect decomposition of G")

    orbits = []
    seen = set()
    for m in sorted(n_set, key=group.index_of):
        if m not in seen:
            orb = orbit(list(q_set), lambda q, y: group.conjugate(y, q), m)
            seen.update(orb)
            orbits.append(orb)
    if len(orbits) != 2:
        raise CompositionRejected(f"Q has {len(orbits)} conjugation orbits on N, expected 2")

    action = CosetAction(group, q_set)
    a = next(m for m in sorted(n_set, key=group.index_of) if m != group.identity)
    stab_mixer = q_mixer.with_claim(Claim(ClaimKind.action, action, action.act(a, 0)))
    coset_mixer = lift_2transitive(group, action, 0, stab_mixer, a, tolerance)
    return compose_extension(group, Subgroup.from_elements(q_set), coset_mixer.with_claim(Claim.on_group()),
                             q_mixer.with_claim(Claim.on_group()), action, 0, tolerance)
