from hypothesis import given, settings, strategies as st
import pytest

from groups import (AlternatingGroup, CyclicGroup, DihedralGroup, EnumerationBoundExceeded, InvalidElement,
                    InvalidGroupSpec, NotASubgroup, NotNormal, ProductGroup, SignedPermutationGroup, SymmetricGroup,
                    CayleyGroup, ORDER_8, ORDER_16, abelian, affine_group, cayley_from_group, conjugacy_classes,
                    dicyclic, get_enumeration_bound, group_from_spec, is_normal, is_subgroup, left_cosets,
                    nonabelian_21, perm_from_cycles, perm_multiply, perm_parity, perm_shift, perm_str,
                    quotient_group, set_enumeration_bound, subgroup_closure)

GROUPS = [
    CyclicGroup(6),
    DihedralGroup(5),
    SymmetricGroup(4),
    AlternatingGroup(5),
    SignedPermutationGroup(3),
    SignedPermutationGroup(3, even_only=True),
    abelian(4, 2),
    dicyclic(2),
    nonabelian_21(),
    affine_group(5),
    ProductGroup([CyclicGroup(2), DihedralGroup(3)]),
]


@pytest.mark.parametrize("group", GROUPS, ids=lambda g: g.kind.name)
def test_enumeration(group):
    elements = group.enumerate()
    assert len(elements) == group.order
    assert len(set(elements)) == group.order
    assert elements[0] == group.identity
    assert all(group.index_of(g) == i for i, g in enumerate(elements))


@pytest.mark.parametrize("group", GROUPS, ids=lambda g: g.kind.name)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_group_axioms(group, data):
    pick = st.integers(min_value=0, max_value=group.order - 1)
    a, b, c = (group.enumerate()[data.draw(pick)] for _ in range(3))
    mul = group.multiply
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, group.inverse(a)) == group.identity
    assert mul(group.identity, a) == a == mul(a, group.identity)
    assert group.power(a, group.element_order(a)) == group.identity
    assert group.conjugate(a, b) == mul(mul(b, a), group.inverse(b))


@pytest.mark.parametrize("group", GROUPS, ids=lambda g: g.kind.name)
def test_spec_roundtrip(group):
    assert group_from_spec(group.spec()) == group
    for g in group.enumerate()[:10]:
        assert group.decode(group.encode(g)) == g


def test_generators_generate():
    for group in GROUPS:
        assert len(subgroup_closure(group, group.generators())) == group.order


def test_permutations():
    f = perm_from_cycles(3, (1, 2))
    g = perm_from_cycles(3, (2, 3))
    fg = perm_multiply(f, g)
    assert fg == (2, 3, 1)
    assert perm_str(fg) == "(1 2 3)"
    assert perm_parity(fg) == 0
    assert perm_parity(f) == 1
    assert perm_shift((2, 1), 1, 4) == (1, 3, 2, 4)
    assert perm_str((1, 2, 3)) == "()"


def test_invalid_elements():
    with pytest.raises(InvalidElement):
        SymmetricGroup(3).validate([1, 1, 2])
    with pytest.raises(InvalidElement):
        AlternatingGroup(3).validate([2, 1, 3])
    with pytest.raises(InvalidElement):
        SignedPermutationGroup(2, even_only=True).validate(([1, 2], [1, 0]))
    with pytest.raises(InvalidElement):
        CyclicGroup(4).validate(4)


def test_dihedral_relations():
    d = DihedralGroup(7)
    sigma, tau = d.sigma, d.tau
    assert d.order == 14
    assert d.power(sigma, 7) == d.identity
    assert d.multiply(d.multiply(tau, sigma), tau) == d.inverse(sigma)
    assert d.element_order(tau) == 2


def test_signed_permutations():
    b = SignedPermutationGroup(3)
    assert b.order == 48
    assert SignedPermutationGroup(3, even_only=True).order == 24
    flip = b.flip(1)
    assert b.act(flip, 1) == -1
    assert b.act(flip, -1) == 1
    assert b.act(flip, 2) == 2
    swap = b.lift(perm_from_cycles(3, (1, 2)))
    assert b.act(swap, -1) == -2


def test_conjugacy_classes():
    sizes = sorted(len(c) for c in conjugacy_classes(SymmetricGroup(4)))
    assert sizes == [1, 3, 6, 6, 8]
    assert len(conjugacy_classes(DihedralGroup(5))) == 4
    assert len(conjugacy_classes(abelian(4, 2))) == 8


def test_subgroups_and_quotients():
    s4 = SymmetricGroup(4)
    klein = [s4.identity, perm_from_cycles(4, (1, 2), (3, 4)), perm_from_cycles(4, (1, 3), (2, 4)),
             perm_from_cycles(4, (1, 4), (2, 3))]
    assert is_subgroup(s4, klein)
    assert is_normal(s4, klein)
    quotient, projection = quotient_group(s4, klein)
    assert quotient.order == 6
    assert projection[s4.identity] == 0
    assert len(left_cosets(s4, klein)) == 6

    s3 = SymmetricGroup(3)
    stabilizer = [g for g in s3.enumerate() if g[0] == 1]
    assert is_subgroup(s3, stabilizer)
    assert not is_normal(s3, stabilizer)
    with pytest.raises(NotNormal):
        quotient_group(s3, stabilizer)

    not_closed = [s3.identity, perm_from_cycles(3, (1, 2, 3))]
    assert not is_subgroup(s3, not_closed)
    with pytest.raises(NotASubgroup):
        left_cosets(s3, not_closed)


def test_permutation_element_orders():
    s5 = SymmetricGroup(5)
    assert s5.element_order(perm_from_cycles(5, (1, 2), (3, 4, 5))) == 6
    assert s5.element_order(perm_from_cycles(5, (1, 2), (3, 4))) == 2
    assert s5.element_order(perm_from_cycles(5, (1, 2, 3, 4, 5))) == 5
    assert s5.element_order(s5.identity) == 1


def test_catalogue():
    for name, build in ORDER_8.items():
        assert build().order == 8, name
    for name, build in ORDER_16.items():
        assert build().order == 16, name
    g = nonabelian_21()
    assert g.order == 21
    assert any(g.multiply(a, b) != g.multiply(b, a) for a in g.enumerate() for b in g.enumerate())
    assert affine_group(5).order == 20


def test_cayley_conversion():
    table, elements = cayley_from_group(DihedralGroup(4))
    assert table.order == 8
    assert elements[0] == DihedralGroup(4).identity
    with pytest.raises(InvalidGroupSpec):
        CayleyGroup([[0, 1], [1, 1]])


def test_enumeration_bound():
    old = get_enumeration_bound()
    try:
        set_enumeration_bound(10)
        with pytest.raises(EnumerationBoundExceeded):
            SymmetricGroup(4).enumerate()
    finally:
        set_enumeration_bound(old)
    with pytest.raises(ValueError):
        set_enumeration_bound(0)


def test_bad_specs():
    with pytest.raises(InvalidGroupSpec):
        group_from_spec({"kind": "nonsense"})
    with pytest.raises(InvalidGroupSpec):
        group_from_spec({"kind": "symmetric"})
    with pytest.raises(InvalidGroupSpec):
        group_from_spec([1, 2])
