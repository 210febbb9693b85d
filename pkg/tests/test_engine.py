from fractions import Fraction
import json

from hypothesis import given, settings, strategies as st
import mpmath
import pytest

from groups import CyclicGroup, DihedralGroup, NaturalAction, SymmetricGroup
from mixing import (ArithmeticMode, Claim, Distribution, DocumentError, InvalidProbability, MixingSequence,
                    ModeMismatch, action_law, entropy_bound, entropy_bound_ok, format_probability, is_uniform,
                    parse_probability, read_json, sample, sequence_law, verify, write_json)

HALF = Fraction(1, 2)


def z8_sequence(length: int = 3) -> MixingSequence:
    return MixingSequence(CyclicGroup(8), [(1, HALF), (2, HALF), (4, HALF)][:length])


def test_parse_probability():
    assert parse_probability("1/3") == Fraction(1, 3)
    assert parse_probability(" 2 / 4 ") == HALF
    assert parse_probability(1) == Fraction(1)
    assert isinstance(parse_probability("0.25"), mpmath.mpf)
    for bad in [0.5, "3/2", "1/0", True, "-1/2", "abc", None]:
        with pytest.raises(InvalidProbability):
            parse_probability(bad)


def test_format_probability():
    assert format_probability(HALF) == "1/2"
    assert format_probability(Fraction(1)) == "1"
    assert format_probability(parse_probability("0.25")) == "0.25"


def test_powers_of_two_mix_the_cyclic_group():
    report = verify(z8_sequence())
    assert report.uniform
    assert report.max_dev == 0
    assert report.support == 8
    assert report.entropy_lb == 3
    assert report.mode == ArithmeticMode.exact


def test_missing_step_is_not_uniform():
    report = verify(z8_sequence(2))
    assert not report.uniform
    assert report.max_dev == Fraction(1, 8)
    assert report.support == 4


def test_group_law_folds_left_to_right():
    s3 = SymmetricGroup(3)
    a, b = s3.transposition(1, 2), s3.transposition(2, 3)
    law = sequence_law(MixingSequence(s3, [(a, Fraction(1)), (b, Fraction(1))]))
    assert law.masses == {s3.multiply(a, b): 1}


def test_action_claim():
    s3 = SymmetricGroup(3)
    action = NaturalAction(s3)
    steps = [(s3.transposition(2, 3), HALF), (s3.transposition(1, 2), Fraction(2, 3))]
    seq = MixingSequence(s3, steps, Claim.on_action(action, 1))
    law = action_law(seq, action, 1)
    assert law.masses == {1: Fraction(1, 3), 2: Fraction(1, 3), 3: Fraction(1, 3)}
    assert verify(seq).uniform
    assert not verify(seq.with_claim(Claim.on_group())).uniform


def test_numeric_mode():
    seq = MixingSequence(CyclicGroup(2), [(1, "0.5")])
    assert seq.mode == ArithmeticMode.numeric
    report = verify(seq)
    assert report.uniform
    assert report.mode == ArithmeticMode.numeric
    with pytest.raises(ModeMismatch):
        verify(seq, ArithmeticMode.exact)
    assert verify(z8_sequence(), ArithmeticMode.numeric).uniform


def test_entropy_bound():
    assert entropy_bound(1) == 0
    assert entropy_bound(2) == 1
    assert entropy_bound(6) == 3
    assert entropy_bound(8) == 3
    assert entropy_bound_ok(z8_sequence()) == (True, 3)
    assert entropy_bound_ok(z8_sequence(2)) == (False, 3)


def test_sequence_transforms_keep_mixing():
    d4 = DihedralGroup(4)
    seq = MixingSequence(d4, [(d4.tau, HALF), ((1, 0), HALF), ((2, 0), HALF)])
    assert verify(seq).uniform
    for h in d4.enumerate():
        assert verify(seq.conjugated(h)).uniform
    assert verify(seq.inverted()).uniform
    padded = MixingSequence(d4, list(seq.steps) + [(d4.identity, HALF), (d4.sigma, Fraction(0))])
    assert padded.without_identity_steps() == seq


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(min_value=0, max_value=7),
                          st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(3, 4), Fraction(1)])),
                max_size=6))
def test_mass_conservation_and_support(steps):
    d4 = DihedralGroup(4)
    seq = MixingSequence(d4, [(d4.enumerate()[i], p) for i, p in steps])
    law = sequence_law(seq)
    assert law.total_mass() == 1
    assert law.support_size <= 2 ** len(steps)
    assert all(m > 0 for m in law.masses.values())


def test_pushforward():
    law = sequence_law(z8_sequence())
    image = law.pushforward(lambda x: x % 4).with_carrier(4)
    assert is_uniform(image) == (True, 0)
    assert Distribution.uniform(range(4)) == image


def test_sampling_is_seeded():
    seq = z8_sequence()
    first = sample(seq, 4000, seed=7)
    second = sample(seq, 4000, seed=7)
    assert first.counts == second.counts
    assert sum(first.counts.values()) == 4000
    assert set(first.counts) <= set(range(8))
    assert first.p_value > 1e-6
    with pytest.raises(ValueError):
        sample(seq, 0, seed=7)


def test_sampling_an_action():
    s3 = SymmetricGroup(3)
    action = NaturalAction(s3)
    seq = MixingSequence(s3, [(s3.transposition(2, 3), HALF), (s3.transposition(1, 2), Fraction(2, 3))],
                         Claim.on_action(action, 1))
    report = sample(seq, 3000, seed=1)
    assert set(report.counts) == {1, 2, 3}


def test_documents(tmp_path):
    s3 = SymmetricGroup(3)
    action = NaturalAction(s3)
    seq = MixingSequence(s3, [(s3.transposition(1, 2), Fraction(2, 3))], Claim.on_action(action, 2))
    path = tmp_path / "seq.json"
    seq.to_file(path)
    assert MixingSequence.from_file(path) == seq
    doc = read_json(path)
    assert doc["steps"] == [{"g": [2, 1, 3], "p": "2/3"}]
    assert doc["claim"] == {"action": "natural", "base": 2}

    write_json({"steps": [{"g": 9, "p": "1/2"}], "group": {"kind": "cyclic", "n": 8}}, path)
    with pytest.raises(DocumentError):
        MixingSequence.from_file(path)
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(DocumentError):
        read_json(path)
    with pytest.raises(DocumentError):
        MixingSequence.from_document(json.loads('{"group": {"kind": "cyclic", "n": 2}}'))
