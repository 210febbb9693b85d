from fractions import Fraction

import pytest

from groups import (AlternatingGroup, CosetAction, CyclicGroup, NaturalAction, ProductGroup, Subgroup,
                    SymmetricGroup, affine_group, perm_from_cycles, subgroup_closure)
from mixing import (Claim, ClaimKind, CompositionRejected, MixingSequence, coarsen_coset_claim, compose_direct_product,
                    compose_extension, construct_alt_full, construct_cyclic_2group, construct_sym_action,
                    construct_sym_fast, lift_2transitive, semidirect_two_orbit_lift, verify)

HALF = Fraction(1, 2)


def test_direct_product():
    seq = compose_direct_product(construct_sym_fast(3), construct_cyclic_2group(1))
    assert seq.group == ProductGroup([SymmetricGroup(3), CyclicGroup(2)])
    assert seq.length == 4
    assert verify(seq).uniform


def test_direct_product_of_a5_and_z2():
    seq = compose_direct_product(construct_alt_full(5), construct_cyclic_2group(1))
    assert seq.group.order == 120
    assert verify(seq).uniform


def test_direct_product_needs_group_claims():
    with pytest.raises(CompositionRejected):
        compose_direct_product(construct_sym_action(3), construct_cyclic_2group(1))


def s3_point_mixer():
    s3 = SymmetricGroup(3)
    stabilizer = Subgroup.from_elements([s3.identity, s3.transposition(2, 3)])
    sigma_t = construct_sym_action(3)
    return s3, stabilizer, sigma_t


def test_extension():
    s3, stabilizer, sigma_t = s3_point_mixer()
    sigma_h = MixingSequence(s3, [(s3.transposition(2, 3), HALF)])
    seq = compose_extension(s3, stabilizer, sigma_t, sigma_h, NaturalAction(s3), 1)
    assert seq.claim.kind == ClaimKind.group
    assert seq.length == 3
    assert verify(seq).uniform


def test_extension_over_cosets():
    s3, stabilizer, sigma_t = s3_point_mixer()
    sigma_h = MixingSequence(s3, [(s3.transposition(2, 3), HALF)])
    seq = compose_extension(s3, stabilizer.elements, sigma_t, sigma_h)
    assert verify(seq).uniform


def test_extension_rejections():
    s3, stabilizer, sigma_t = s3_point_mixer()
    action = NaturalAction(s3)
    outside = MixingSequence(s3, [(s3.transposition(1, 2), HALF)])
    with pytest.raises(CompositionRejected):
        compose_extension(s3, stabilizer, sigma_t, outside, action, 1)
    biased = MixingSequence(s3, [(s3.transposition(2, 3), Fraction(1, 3))])
    with pytest.raises(CompositionRejected):
        compose_extension(s3, stabilizer, sigma_t, biased, action, 1)
    short = MixingSequence(s3, sigma_t.steps[:1])
    with pytest.raises(CompositionRejected):
        compose_extension(s3, stabilizer, short, biased, action, 1)


def s4_stabilizer_mixer(s4: SymmetricGroup) -> MixingSequence:
    # mixes 2, 3, 4 from the point 2 and fixes 1
    steps = [(perm_from_cycles(4, (3, 4)), HALF), (perm_from_cycles(4, (2, 3)), Fraction(2, 3))]
    return MixingSequence(s4, steps, Claim.on_action(NaturalAction(s4), 2))


def test_lift_2transitive():
    s4 = SymmetricGroup(4)
    action = NaturalAction(s4)
    sigma_h = s4_stabilizer_mixer(s4)
    lifted = lift_2transitive(s4, action, 1, sigma_h, perm_from_cycles(4, (1, 2)))
    assert lifted.length == 3
    assert lifted.steps[-1] == (perm_from_cycles(4, (1, 2)), Fraction(3, 4))
    assert lifted.claim.base == 1
    assert verify(lifted).uniform


def test_lift_conjugates_the_stabilizer_mixer():
    s4 = SymmetricGroup(4)
    lifted = lift_2transitive(s4, NaturalAction(s4), 1, s4_stabilizer_mixer(s4), perm_from_cycles(4, (1, 3)))
    assert verify(lifted).uniform


def test_lift_rejections():
    s4 = SymmetricGroup(4)
    action = NaturalAction(s4)
    with pytest.raises(CompositionRejected):
        lift_2transitive(s4, action, 1, s4_stabilizer_mixer(s4), perm_from_cycles(4, (2, 3)))
    with pytest.raises(CompositionRejected):
        lift_2transitive(s4, action, 1, s4_stabilizer_mixer(s4).with_claim(Claim.on_group()),
                         perm_from_cycles(4, (1, 2)))
    a3 = AlternatingGroup(3)
    cyclic_action = NaturalAction(a3)
    with pytest.raises(CompositionRejected):
        lift_2transitive(a3, cyclic_action, 1, MixingSequence(a3, [], Claim.on_action(cyclic_action, 2)),
                         perm_from_cycles(3, (1, 2, 3)))


def affine_parts():
    group = affine_group(5)
    translation, scaling = (2, 3, 4, 5, 1), (1, 3, 5, 2, 4)
    normal = subgroup_closure(group, [translation])
    complement = subgroup_closure(group, [scaling])
    return group, scaling, normal, complement


def test_semidirect_two_orbit_lift():
    group, s, normal, complement = affine_parts()
    assert len(normal) == 5 and len(complement) == 4
    q_mixer = MixingSequence(group, [(s, HALF), (group.multiply(s, s), HALF)])
    seq = semidirect_two_orbit_lift(group, normal, complement, q_mixer)
    assert seq.length == 5
    assert verify(seq).uniform


def test_semidirect_rejects_partial_complement():
    group, s, normal, _ = affine_parts()
    s2 = group.multiply(s, s)
    small = subgroup_closure(group, [s2])
    with pytest.raises(CompositionRejected):
        semidirect_two_orbit_lift(group, normal, small, MixingSequence(group, [(s2, HALF)]))
    with pytest.raises(CompositionRejected):
        semidirect_two_orbit_lift(group, small, normal, MixingSequence(group, [(s2, HALF)]))


def test_coarsen_coset_claim():
    s3 = SymmetricGroup(3)
    mixer = construct_sym_fast(3)
    trivial = Claim(ClaimKind.action, CosetAction(s3, [s3.identity]), 0)
    stabilizer = [s3.identity, s3.transposition(2, 3)]
    coarse = coarsen_coset_claim(mixer.with_claim(trivial), stabilizer)
    assert coarse.claim.action.size() == 3
    assert verify(coarse).uniform

    fine = Claim(ClaimKind.action, CosetAction(s3, stabilizer), 0)
    with pytest.raises(CompositionRejected):
        coarsen_coset_claim(mixer.with_claim(fine), [s3.identity, s3.transposition(1, 2)])
    with pytest.raises(CompositionRejected):
        coarsen_coset_claim(mixer, stabilizer)
