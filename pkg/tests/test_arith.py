from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from detinterp.arith import (PRIMES, PrimeField, format_rational, is_probable_prime,
                             parse_rational, rational_normalize, reduce_mod)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)


def test_normalize_examples():
    assert rational_normalize(6, -4) == Fraction(-3, 2)
    z = rational_normalize(0, 7)
    assert (z.numerator, z.denominator) == (0, 1)
    q = rational_normalize(-1728, 1)
    assert (q.numerator, q.denominator) == (-1728, 1)


def test_normalize_zero_denominator():
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        rational_normalize(1, 0)


def test_reduce_mod_examples():
    assert reduce_mod(Fraction(1, 2), 7).value == 4
    # long division: 1728 = 17*101 + 11, so -1728 = -11 = 90 (mod 101)
    assert divmod(1728, 101) == (17, 11)
    assert reduce_mod(-1728, 101).value == 101 - 11 == 90
    with pytest.raises(ValueError, match="bad prime"):
        reduce_mod(Fraction(3, 5), 5)


def test_serialization():
    assert format_rational(Fraction(-3, 2)) == "-3/2"
    assert format_rational(7) == "7"
    assert parse_rational("-3/2") == Fraction(-3, 2)
    assert parse_rational(" 6/-4 ".replace("-", "")) == Fraction(3, 2)
    for bad in ("1.5", "1e3", "", "x"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_prime_table():
    assert all(is_probable_prime(p) for p in PRIMES)
    assert all(2**60 < p < 2**61 for p in PRIMES)
    assert not is_probable_prime(2**61 + 1)
    with pytest.raises(ValueError):
        PrimeField(2**61 - 3)


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert a * (1 / a) == 1
    assert a.denominator >= 1


@given(st.integers(0, PRIMES[0] - 1), st.integers(0, PRIMES[0] - 1), st.integers(0, PRIMES[0] - 1))
def test_prime_field_axioms(x, y, z):
    F = PrimeField(PRIMES[0])
    a, b, c = F(x), F(y), F(z)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F(0)
    if a:
        assert a * a.inverse() == F(1)


@given(rationals, rationals, rationals, st.sampled_from(PRIMES[:3] + (101, 7)))
def test_reduce_mod_is_homomorphism(a, b, c, p):
    try:
        lhs = reduce_mod(a * b + c, p)
        rhs = reduce_mod(a, p) * reduce_mod(b, p) + reduce_mod(c, p)
    except ValueError:
        return
    assert lhs == rhs
