"""Exact scalars: reduced rationals and prime-field elements.

Rationals are plain :class:`fractions.Fraction` values, which are always kept
in lowest terms with a positive denominator.  Prime-field elements are only
used for fast screening probes, never as a source of truth.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

# Primes just below 2**61 (the first is the Mersenne prime 2**61 - 1).
PRIMES = (
    2305843009213693951,
    2305843009213693921,
    2305843009213693907,
    2305843009213693723,
    2305843009213693693,
    2305843009213693669,
    2305843009213693613,
    2305843009213693561,
)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def rational_normalize(num: int, den: int) -> Fraction:
    if den == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(int(num), int(den))


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and exact strings; floats are rejected."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not an exact rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not an exact rational literal: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    return rational_normalize(int(m.group(1)), den)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_probable_prime(p: int) -> bool:
    """Deterministic Miller-Rabin for p < 3.3e24."""
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Context object for arithmetic modulo a fixed prime."""

    def __init__(self, p: int):
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __call__(self, value) -> "PrimeFieldElem":
        if isinstance(value, (Fraction, str)) or isinstance(value, _RationalABC) and not isinstance(value, int):
            return reduce_mod(to_rational(value), self.p)
        return PrimeFieldElem(int(value) % self.p, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class PrimeFieldElem:
    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        if not 0 <= value < p:
            raise ValueError("value out of range")
        self.value = value
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeFieldElem):
            if other.p != self.p:
                raise ValueError("mismatched moduli")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElem((self.value + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElem((self.value - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElem((o - self.value) % self.p, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElem(self.value * o % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElem(-self.value % self.p, self.p)

    def inverse(self) -> "PrimeFieldElem":
        if self.value == 0:
            raise ZeroDivisionError("division by zero")
        return PrimeFieldElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * PrimeFieldElem(o, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElem):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def reduce_mod(q, p: int) -> PrimeFieldElem:
    q = to_rational(q)
    if q.denominator % p == 0:
        raise ValueError("bad prime for this value")
    return PrimeFieldElem(q.numerator * pow(q.denominator, -1, p) % p, p)
