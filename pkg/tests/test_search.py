from fractions import Fraction

import pytest

from groups import (AlternatingGroup, CyclicGroup, EnumerationBoundExceeded, SymmetricGroup, abelian, nonabelian_21,
                    perm_from_cycles)
from mixing import Distribution, MixingStep, convolve_step, verify
from search import (EmptyGrid, InvalidGrid, SearchConfig, SequenceFound, certify_no_mixing, parse_grid,
                    proper_quotients, search_min_length, validate_grid)
from search.grid_search import _Search

HALF = Fraction(1, 2)
THIRDS = (Fraction(1, 3), HALF, Fraction(2, 3))


def test_validate_grid():
    assert validate_grid([HALF, Fraction(1, 3), HALF]) == (Fraction(1, 3), HALF)
    with pytest.raises(EmptyGrid):
        validate_grid([])
    for bad in [Fraction(1), Fraction(0), 0.5, True, "1/2"]:
        with pytest.raises(InvalidGrid):
            validate_grid([bad])


def test_parse_grid():
    assert parse_grid("1/2,1/3,2/3") == THIRDS
    assert parse_grid(" 1/2, ,1/4 ") == (Fraction(1, 4), HALF)
    with pytest.raises(InvalidGrid):
        parse_grid("1/2,half")
    with pytest.raises(InvalidGrid):
        parse_grid("1/0")
    with pytest.raises(EmptyGrid):
        parse_grid("")


@pytest.mark.parametrize("group,length", [
    (CyclicGroup(1), 0),
    (CyclicGroup(2), 1),
    (CyclicGroup(4), 2),
    (abelian(2, 2), 2),
    (CyclicGroup(8), 3),
])
def test_two_groups_reach_the_entropy_bound(group, length):
    result = search_min_length(group, SearchConfig(grid=(HALF,), max_length=5))
    assert not result.exhausted
    assert result.length == length
    assert result.sequence.length == length
    assert verify(result.sequence).uniform
    assert result.to_document()["outcome"] == "found"


def test_s3_needs_thirds():
    s3 = SymmetricGroup(3)
    result = search_min_length(s3, SearchConfig(grid=THIRDS, max_length=4))
    assert result.length == 3
    assert verify(result.sequence).uniform


def test_s3_without_first_step_classes():
    result = search_min_length(SymmetricGroup(3), SearchConfig(grid=THIRDS, max_length=3, first_step_classes=False))
    assert result.length == 3


def test_threads():
    for threads in (2, 4):
        result = search_min_length(CyclicGroup(8), SearchConfig(grid=(HALF,), max_length=4, threads=threads))
        assert result.length == 3
        result = search_min_length(SymmetricGroup(3), SearchConfig(grid=THIRDS, max_length=3, threads=threads))
        assert result.length == 3


def test_endpoint_rule():
    result = search_min_length(SymmetricGroup(3), SearchConfig(grid=THIRDS, max_length=4, endpoint_rule=True))
    assert result.length == 3
    probabilities = result.sequence.probabilities()
    assert probabilities[0] == probabilities[-1] == HALF
    result = search_min_length(CyclicGroup(4), SearchConfig(grid=(HALF,), max_length=3, endpoint_rule=True))
    assert result.length == 2


def test_endpoint_rule_without_one_half():
    config = SearchConfig(grid=(Fraction(1, 3),), max_length=3, endpoint_rule=True)
    assert search_min_length(CyclicGroup(2), config).exhausted


def test_z3_is_exhausted():
    result = search_min_length(CyclicGroup(3), SearchConfig(grid=(HALF,), max_length=8))
    assert result.exhausted
    assert result.length is None
    assert result.nodes > 0
    doc = result.to_document()
    assert doc["outcome"] == "exhausted"
    assert doc["sequence"] is None


def test_certify_no_mixing():
    certificate = certify_no_mixing(CyclicGroup(3), SearchConfig(grid=THIRDS, max_length=6))
    assert certificate.odd_quotient == 3
    assert certificate.to_document()["grid"] == ["1/3", "1/2", "2/3"]

    certificate = certify_no_mixing(AlternatingGroup(4), SearchConfig(grid=(HALF,), max_length=4))
    assert certificate.odd_quotient == 3
    assert certificate.max_length == 4


def test_a4_with_thirds_is_exhausted():
    result = search_min_length(AlternatingGroup(4), SearchConfig(grid=THIRDS, max_length=5))
    assert result.exhausted
    assert result.exhausted_quotient == 3
    certificate = certify_no_mixing(AlternatingGroup(4), SearchConfig(grid=THIRDS, max_length=5))
    assert certificate.odd_quotient == 3


QUARTERS = (Fraction(1, 4), Fraction(1, 3), HALF, Fraction(2, 3), Fraction(3, 4))


@pytest.mark.parametrize("group", [
    CyclicGroup(3),
    CyclicGroup(5),
    CyclicGroup(6),
    CyclicGroup(7),
    CyclicGroup(9),
    AlternatingGroup(4),
    CyclicGroup(15),
    nonabelian_21(),
], ids=lambda g: f"{g.kind.name}{g.order}")
def test_odd_quotients_agree_with_exhaustion(group):
    certificate = certify_no_mixing(group, SearchConfig(grid=QUARTERS, max_length=8))
    assert certificate.odd_quotient is not None
    assert certificate.odd_quotient % 2 == 1
    assert certificate.max_length == 8


def test_singular_steps():
    # no step (g, 1/2) with g of even order
    result = search_min_length(CyclicGroup(5), SearchConfig(grid=QUARTERS, max_length=8))
    assert result.exhausted
    assert result.singular_pruned > 0
    assert result.memo_hits == 0
    result = search_min_length(CyclicGroup(4), SearchConfig(grid=(Fraction(1, 3), Fraction(2, 3)), max_length=6))
    assert result.exhausted
    assert result.singular_pruned > 0


def test_quotients():
    quotients = proper_quotients(CyclicGroup(6))
    assert [q.order for q in quotients] == [2, 3]
    assert [q.order for q in proper_quotients(AlternatingGroup(4))] == [3]
    assert proper_quotients(CyclicGroup(7)) == []
    assert [q.order for q in proper_quotients(SymmetricGroup(4))] == [2, 6]

    result = search_min_length(CyclicGroup(6), SearchConfig(grid=(HALF,), max_length=8))
    assert result.exhausted
    assert result.exhausted_quotient == 3
    assert result.to_document()["exhausted_quotient"] == 3

    result = search_min_length(SymmetricGroup(3), SearchConfig(grid=THIRDS, max_length=4))
    assert result.quotient_floor == 1
    assert result.length == 3


@pytest.mark.parametrize("group,grid,max_length,expected", [
    (CyclicGroup(3), THIRDS, 6, None),
    (CyclicGroup(5), THIRDS, 5, None),
    (AlternatingGroup(4), (HALF,), 4, None),
    (CyclicGroup(4), (HALF,), 3, 2),
    (SymmetricGroup(3), THIRDS, 4, 3),
    (abelian(2, 2), THIRDS, 3, 2),
], ids=lambda x: getattr(x, "name", None))
def test_structural_pruning_keeps_outcomes(group, grid, max_length, expected):
    for structural in (True, False):
        result = search_min_length(group, SearchConfig(grid=grid, max_length=max_length,
                                                       structural_pruning=structural))
        assert result.length == expected
        if not structural:
            assert result.singular_pruned == 0
            assert result.exhausted_quotient is None


def test_translated_laws_share_a_fingerprint():
    group = SymmetricGroup(3)
    state = _Search(group, SearchConfig(grid=THIRDS, max_length=4))
    mu = Distribution.delta(group.identity, group.order)
    for g, p in [(perm_from_cycles(3, (1, 2)), Fraction(1, 3)), (perm_from_cycles(3, (1, 2, 3)), HALF)]:
        mu = convolve_step(group, mu, MixingStep(g, p))
    for h in group.enumerate():
        moved = mu.pushforward(lambda x: group.multiply(h, x))
        assert state.fingerprint(moved, 2) == state.fingerprint(mu, 2)
    assert state.fingerprint(mu, 2) != state.fingerprint(mu, 1)
    other = convolve_step(group, Distribution.delta(group.identity, group.order),
                          MixingStep(perm_from_cycles(3, (1, 2)), HALF))
    assert state.fingerprint(other, 2) != state.fingerprint(mu, 2)


def test_certify_no_mixing_on_a_grid_gap():
    # S3 has mixing sequences, none with probabilities 1/2 only
    certificate = certify_no_mixing(SymmetricGroup(3), SearchConfig(grid=(HALF,), max_length=5))
    assert certificate.odd_quotient is None


def test_certify_no_mixing_finds_a_sequence():
    with pytest.raises(SequenceFound) as info:
        certify_no_mixing(CyclicGroup(4), SearchConfig(grid=(HALF,), max_length=3))
    assert info.value.sequence.length == 2


def test_search_limits():
    with pytest.raises(EnumerationBoundExceeded):
        search_min_length(SymmetricGroup(5), SearchConfig(grid=(HALF,), max_length=8, max_order=100))
    with pytest.raises(ValueError):
        search_min_length(CyclicGroup(2), SearchConfig(grid=(HALF,), max_length=-1))
    with pytest.raises(ValueError):
        search_min_length(CyclicGroup(2), SearchConfig(grid=(HALF,), max_length=2, threads=0))
    with pytest.raises(EmptyGrid):
        search_min_length(CyclicGroup(2), SearchConfig(grid=(), max_length=2))
