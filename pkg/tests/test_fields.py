from fractions import Fraction

import pytest

from tpimplicit.fields import DEFAULT_PRIME, GF, QQ, FieldMismatchError, parse_field


def test_default_prime_is_just_below_2_62():
    assert DEFAULT_PRIME < 2**62
    assert pow(3, DEFAULT_PRIME - 1, DEFAULT_PRIME) == 1


@pytest.mark.parametrize("a", [1, -7, Fraction(3, 5), Fraction(-22, 9)])
def test_inverse_and_negation(field, a):
    x = field(a)
    assert field.add(x, field.neg(x)) == field.zero
    assert field.mul(x, field.inv(x)) == field.one


def test_prime_field_converts_fractions():
    F = GF(7)
    assert F(Fraction(1, 2)) == 4
    with pytest.raises(ZeroDivisionError):
        F(Fraction(1, 7))


def test_mixing_fields_is_an_error():
    with pytest.raises(FieldMismatchError):
        QQ.check(GF())


@pytest.mark.parametrize("text,expected", [
    ("rational", QQ), ("fp", GF()), ("fp:101", GF(101)), ("fp(101)", GF(101))])
def test_parse_field(text, expected):
    assert parse_field(text) == expected


def test_primality_check():
    from tpimplicit.fields import DEFAULT_PRIME, SMALL_PRIME, is_prime
    import sympy
    assert is_prime(DEFAULT_PRIME) and is_prime(SMALL_PRIME)
    assert [n for n in range(200) if is_prime(n)] == list(sympy.primerange(0, 200))
    assert not is_prime(3215031751) and not is_prime(2**61 + 1)
    with pytest.raises(ValueError):
        GF(91)
