from hypothesis import given, settings, strategies as st
import pytest

from groups import (FieldError, FiniteField, NotIrreducible, ZeroInverse, field_from_spec, get_field,
                    is_irreducible, prime_power)

FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]


@pytest.mark.parametrize("p,e", FIELDS)
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_field_axioms(p, e, data):
    f = get_field(p, e)
    element = st.integers(min_value=0, max_value=f.q - 1)
    a, b, c = data.draw(element), data.draw(element), data.draw(element)
    assert f.add(a, b) == f.add(b, a)
    assert f.mul(a, b) == f.mul(b, a)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == f.zero
    assert f.sub(f.add(a, b), b) == a
    if a:
        assert f.mul(a, f.inv(a)) == f.one
        assert f.exp(f.log(a)) == a
        assert f.pow(a, -1) == f.inv(a)


@pytest.mark.parametrize("p,e", FIELDS)
def test_generator_is_primitive(p, e):
    f = get_field(p, e)
    powers = {f.pow(f.generator, k) for k in range(f.q - 1)}
    assert powers == set(f.nonzero())


def test_prime_field_arithmetic():
    f = get_field(7)
    assert f.mul(3, 5) == 1
    assert f.add(4, 5) == 2
    assert f.roots_of_unity(3) == [1, 2, 4]
    assert f.roots_of_unity(2) == [1, 6]


def test_extension_field():
    f = get_field(2, 2)
    assert f.q == 4
    # x * x = x + 1 modulo x^2 + x + 1
    assert f.mul(2, 2) == 3
    assert f.validate([1, 1]) == 3
    assert f.encode(3) == [1, 1]
    assert f.element_str(3) == "x+1"
    assert f.to_coeffs(2) == [0, 1]


def test_field_errors():
    with pytest.raises(FieldError):
        FiniteField(4)
    with pytest.raises(NotIrreducible):
        FiniteField(2, 2, modulus=(1, 0, 1))
    with pytest.raises(ZeroInverse):
        get_field(5).inv(0)
    with pytest.raises(FieldError):
        get_field(5).validate(5)
    with pytest.raises(FieldError):
        prime_power(12)
    assert prime_power(9) == (3, 2)
    assert prime_power(2) == (2, 1)


def test_irreducibility():
    assert is_irreducible([1, 1, 1], 2)
    assert not is_irreducible([1, 0, 1], 2)
    assert is_irreducible([1, 1, 0, 1], 2)
    assert not is_irreducible([0, 1, 1], 3)


def test_field_specs():
    assert field_from_spec(8) == get_field(2, 3)
    assert field_from_spec({"p": 3, "e": 2}) == get_field(3, 2)
    f = field_from_spec({"p": 2, "e": 2, "modulus": [1, 1, 1]})
    assert field_from_spec(f.spec()) == f
    with pytest.raises(FieldError):
        field_from_spec("F4")
