"""Sparse multivariate polynomials over Q in two variable blocks.

A polynomial lives in Q[a_0..a_n, x_0..x_n].  Each term's exponent vector is
packed into one Python int: the most significant field holds the total
degree, followed by a_0, ..., a_n, x_0, ..., x_n.  With this layout integer
comparison of keys *is* graded-lex order (a_0 > ... > a_n > x_0 > ... > x_n),
monomial multiplication is integer addition, and a divisibility test is a
single masked subtraction.
"""

from __future__ import annotations

import heapq
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from .arith import format_rational, to_rational

BITS = 16
FIELD = (1 << BITS) - 1
MAX_EXP = (1 << (BITS - 1)) - 1

BLOCKS = ("a", "x")


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


@dataclass(frozen=True)
class ExponentVector:
    a: tuple
    x: tuple

    @property
    def a_degree(self) -> int:
        return sum(self.a)

    @property
    def x_degree(self) -> int:
        return sum(self.x)


@lru_cache(maxsize=None)
def _layout(nb: int):
    nv = 2 * nb
    shifts = tuple(BITS * (nv - 1 - i) for i in range(nv))
    total_shift = BITS * nv
    guard = 0
    for s in shifts + (total_shift,):
        guard |= 1 << (s + BITS - 1)
    return shifts, total_shift, guard


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _qdiv(a, b):
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return _norm(Fraction(a) / b)


def _block_index(block) -> int:
    if block in (0, "a", "first"):
        return 0
    if block in (1, "x", "second"):
        return 1
    raise ValueError(f"unknown variable block {block!r}")


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` maps packed keys to nonzero coefficients."""

    __slots__ = ("nb", "terms", "_hash")

    def __init__(self, nb: int, terms=None):
        self.nb = nb
        self.terms = {} if terms is None else terms
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, nb):
        return cls(nb, {})

    @classmethod
    def constant(cls, nb, c):
        c = _norm(to_rational(c)) if not isinstance(c, int) else c
        return cls(nb, {0: c} if c != 0 else {})

    @classmethod
    def monomial(cls, nb, a_exps=None, x_exps=None, coeff=1):
        a_exps = tuple(a_exps) if a_exps is not None else (0,) * nb
        x_exps = tuple(x_exps) if x_exps is not None else (0,) * nb
        if len(a_exps) != nb or len(x_exps) != nb:
            raise ValueError("exponent vector length mismatch")
        coeff = _norm(to_rational(coeff))
        if coeff == 0:
            return cls(nb, {})
        return cls(nb, {encode(nb, a_exps + x_exps): coeff})

    @classmethod
    def var(cls, nb, block, index):
        exps = [0] * (2 * nb)
        exps[_block_index(block) * nb + index] = 1
        return cls(nb, {encode(nb, exps): 1})

    @classmethod
    def from_terms(cls, nb, items):
        """Build from an iterable of (ExponentVector, coefficient)."""
        out = {}
        for ev, c in items:
            c = _norm(to_rational(c))
            if c == 0:
                continue
            k = encode(nb, tuple(ev.a) + tuple(ev.x))
            v = out.get(k, 0) + c
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return cls(nb, out)

    # inspection -------------------------------------------------------

    @property
    def n(self) -> int:
        return self.nb - 1

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(self.terms.get(0, 0))

    def __len__(self):
        return len(self.terms)

    def items(self):
        """(ExponentVector, coefficient) pairs in canonical (descending grlex) order."""
        nb = self.nb
        for k in sorted(self.terms, reverse=True):
            e = decode(nb, k)
            yield ExponentVector(e[:nb], e[nb:]), Fraction(self.terms[k])

    def leading_key(self) -> int:
        return max(self.terms)

    def leading_coefficient(self) -> Fraction:
        return Fraction(self.terms[max(self.terms)])

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.terms) >> _layout(self.nb)[1]

    def block_degrees(self):
        """Set of (a-degree, x-degree) pairs occurring among the terms."""
        nb = self.nb
        out = set()
        for k in self.terms:
            e = decode(nb, k)
            out.add((sum(e[:nb]), sum(e[nb:])))
        return out

    def bidegree(self):
        degs = self.block_degrees()
        if not degs:
            return None
        return (max(d[0] for d in degs), max(d[1] for d in degs))

    def is_bihomogeneous(self) -> bool:
        return len(self.block_degrees()) <= 1

    def uses_block(self, block) -> bool:
        b = _block_index(block)
        nb = self.nb
        for k in self.terms:
            e = decode(nb, k)
            if any(e[b * nb:(b + 1) * nb]):
                return True
        return False

    # arithmetic -------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nb, other)
        if other.nb != self.nb:
            raise ValueError("variable-count mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = _norm(v)
        return MultiPoly(self.nb, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nb, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) - c
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = _norm(v)
        return MultiPoly(self.nb, out)

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        c = _norm(to_rational(c)) if not isinstance(c, int) else c
        if c == 0:
            return MultiPoly(self.nb, {})
        if c == 1:
            return self
        return MultiPoly(self.nb, {k: _norm(v * c) for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        if other.nb != self.nb:
            raise ValueError("variable-count mismatch")
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return MultiPoly(self.nb, {})
        if len(b) == 1:
            (kb, cb), = b.items()
            return MultiPoly(self.nb, {k + kb: _norm(c * cb) for k, c in a.items()})
        out = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return MultiPoly(self.nb, {k: _norm(v) for k, v in out.items() if v != 0})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.constant(self.nb, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            return exact_divide(self, other)
        c = to_rational(other)
        if c == 0:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / c)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nb == other.nb and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nb, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution ---------------------------------------

    def derivative(self, block, index: int, order: int = 1):
        """Iterated formal partial derivative d^order / d v^order."""
        nb = self.nb
        if not 0 <= index < nb:
            raise ValueError("variable index out of range")
        if order < 0:
            raise ValueError("order must be non-negative")
        if order == 0:
            return self
        shifts, tshift, _ = _layout(nb)
        s = shifts[_block_index(block) * nb + index]
        dec = order * ((1 << s) + (1 << tshift))
        out = {}
        for k, c in self.terms.items():
            e = (k >> s) & FIELD
            if e < order:
                continue
            f = 1
            for t in range(e - order + 1, e + 1):
                f *= t
            out[k - dec] = c * f
        return MultiPoly(nb, out)

    def partial(self, block, multi_index):
        """Mixed partial: multi_index[i] derivatives in variable i of ``block``."""
        f = self
        for i, t in enumerate(multi_index):
            if t:
                f = f.derivative(block, i, t)
        return f

    def evaluate(self, a_point=None, x_point=None):
        """Substitute exact coordinates for one or both blocks.

        The coordinates are used as given (no projective renormalisation).
        Returns a MultiPoly in the remaining block; a constant polynomial if
        both blocks are substituted.
        """
        if a_point is None and x_point is None:
            raise ValueError("at least one block must be substituted")
        nb = self.nb
        values = [None] * (2 * nb)
        for b, pt in ((0, a_point), (1, x_point)):
            if pt is None:
                continue
            coords = pt.coords if isinstance(pt, PointProj) else tuple(to_rational(c) for c in pt)
            if len(coords) != nb:
                raise ValueError("point has wrong number of coordinates")
            for i, c in enumerate(coords):
                values[b * nb + i] = _norm(c)
        return self._substitute(values)

    def _substitute(self, values):
        nb = self.nb
        shifts, tshift, _ = _layout(nb)
        powcache = {}
        out = {}
        for k, c in self.terms.items():
            e = decode(nb, k)
            newk = k
            coeff = c
            for i, v in enumerate(values):
                if v is None or e[i] == 0:
                    continue
                key = (i, e[i])
                pv = powcache.get(key)
                if pv is None:
                    pv = powcache[key] = v ** e[i]
                coeff = coeff * pv
                newk -= e[i] * ((1 << shifts[i]) + (1 << tshift))
                if coeff == 0:
                    break
            if coeff == 0:
                continue
            v = out.get(newk, 0) + coeff
            if v == 0:
                out.pop(newk, None)
            else:
                out[newk] = v
        return MultiPoly(nb, {k: _norm(v) for k, v in out.items()})

    def swap_blocks(self):
        """Rename a_i <-> x_i."""
        nb = self.nb
        out = {}
        for k, c in self.terms.items():
            e = decode(nb, k)
            out[encode(nb, e[nb:] + e[:nb])] = c
        return MultiPoly(nb, out)

    def translate(self, block, point, pivot: int):
        """Dehomogenise ``block`` at ``pivot`` and move ``point`` to the origin.

        ``point`` is rescaled so its pivot coordinate is 1; then v_pivot := 1
        and v_i := v_i + p_i for the other variables of the block.  The
        lowest total degree (in that block) of the result is the vanishing
        order at the point.
        """
        nb = self.nb
        b = _block_index(block)
        coords = [to_rational(c) for c in (point.coords if isinstance(point, PointProj) else point)]
        if coords[pivot] == 0:
            raise ValueError("pivot coordinate must be nonzero")
        coords = [_norm(c / coords[pivot]) for c in coords]
        shifts, tshift, _ = _layout(nb)
        binom_cache = {}

        def expansion(i, e):
            key = (i, e)
            ex = binom_cache.get(key)
            if ex is None:
                p = coords[i]
                s = shifts[b * nb + i]
                ex = []
                for j in range(e + 1):
                    c = comb(e, j) * p ** (e - j)
                    if c != 0:
                        ex.append((j * ((1 << s) + (1 << tshift)), c))
                binom_cache[key] = ex
            return ex

        out = {}
        for k, c in self.terms.items():
            e = decode(nb, k)
            base = k
            for i in range(nb):
                ei = e[b * nb + i]
                if ei:
                    base -= ei * ((1 << shifts[b * nb + i]) + (1 << tshift))
            factors = [expansion(i, e[b * nb + i]) for i in range(nb) if i != pivot and e[b * nb + i]]
            for combo in itertools.product(*factors):
                kk = base
                cc = c
                for dk, dc in combo:
                    kk += dk
                    cc = cc * dc
                v = out.get(kk, 0) + cc
                if v == 0:
                    out.pop(kk, None)
                else:
                    out[kk] = v
        return MultiPoly(nb, {k: _norm(v) for k, v in out.items()})

    def min_block_degree(self, block) -> int:
        b = _block_index(block)
        nb = self.nb
        if not self.terms:
            raise ValueError("zero polynomial has no order")
        return min(sum(decode(nb, k)[b * nb:(b + 1) * nb]) for k in self.terms)

    def homogeneous_part(self, block, degree: int):
        b = _block_index(block)
        nb = self.nb
        return MultiPoly(nb, {k: c for k, c in self.terms.items()
                              if sum(decode(nb, k)[b * nb:(b + 1) * nb]) == degree})

    def coefficients_in(self, block):
        """Split by monomials of ``block``: {exponent tuple: MultiPoly in the other block}."""
        b = _block_index(block)
        nb = self.nb
        shifts, tshift, _ = _layout(nb)
        groups = {}
        for k, c in self.terms.items():
            e = decode(nb, k)
            be = e[b * nb:(b + 1) * nb]
            rest = list(e)
            for i in range(nb):
                rest[b * nb + i] = 0
            groups.setdefault(be, {})[encode(nb, rest)] = c
        return {be: MultiPoly(nb, t) for be, t in groups.items()}

    # text ------------------------------------------------------------

    def to_str(self, aliases: bool = False) -> str:
        return format_poly(self, aliases=aliases)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, n={self.n})"


def encode(nb: int, exps) -> int:
    shifts, tshift, _ = _layout(nb)
    k = sum(exps) << tshift
    for e, s in zip(exps, shifts):
        if e < 0 or e > MAX_EXP:
            raise ValueError("exponent out of range")
        k |= e << s
    return k


def decode(nb: int, key: int) -> tuple:
    shifts, _, _ = _layout(nb)
    return tuple((key >> s) & FIELD for s in shifts)


def poly_mul(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    return f * g


def partial_derivative(f: MultiPoly, block, var_index: int, order: int = 1) -> MultiPoly:
    if order < 1:
        raise ValueError("order must be positive")
    return f.derivative(block, var_index, order)


def evaluate(f: MultiPoly, a_point=None, x_point=None) -> MultiPoly:
    return f.evaluate(a_point, x_point)


def exact_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Return q with f == q*g, or raise NotDivisible.

    Division by leading terms in grlex order, driven by a max-heap of
    remainder keys so each step finds the leading term in O(log n).
    """
    if g.nb != f.nb:
        raise ValueError("variable-count mismatch")
    if not g.terms:
        raise ZeroDivisionError("division by zero polynomial")
    nb = f.nb
    if len(g.terms) == 1:
        (kg, cg), = g.terms.items()
        _, _, guard = _layout(nb)
        out = {}
        for k, c in f.terms.items():
            if ((k | guard) - kg) & guard != guard:
                raise NotDivisible("leading monomial not divisible")
            out[k - kg] = _qdiv(c, cg)
        return MultiPoly(nb, out)
    _, _, guard = _layout(nb)
    lk = max(g.terms)
    lc = g.terms[lk]
    rest = [(k - lk, c) for k, c in g.terms.items() if k != lk]
    rem = dict(f.terms)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot = {}
    while heap:
        k = -heapq.heappop(heap)
        c = rem.pop(k, 0)
        if c == 0:
            continue
        # drop duplicate heap entries for this key
        while heap and heap[0] == -k:
            heapq.heappop(heap)
        if ((k | guard) - lk) & guard != guard:
            raise NotDivisible("leading monomial not divisible")
        qk = k - lk
        qc = _qdiv(c, lc)
        quot[qk] = qc
        for dk, dc in rest:
            kk = qk + dk + lk
            v = rem.get(kk)
            if v is None:
                rem[kk] = -qc * dc
                heapq.heappush(heap, -kk)
            else:
                v = v - qc * dc
                rem[kk] = v
    return MultiPoly(nb, {k: _norm(v) for k, v in quot.items()})


def divides(g: MultiPoly, f: MultiPoly) -> bool:
    try:
        exact_divide(f, g)
    except NotDivisible:
        return False
    return True


def content_and_primitive(f: MultiPoly):
    """Split f = content * primitive with primitive integral, coprime, positive leading coefficient."""
    if f.is_zero():
        raise ValueError("zero polynomial has no content")
    coeffs = [Fraction(c) for c in f.terms.values()]
    num = 0
    den = 1
    for c in coeffs:
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
    content = Fraction(num, den)
    if f.leading_coefficient() < 0:
        content = -content
    prim = MultiPoly(f.nb, {k: _norm(Fraction(c) / content) for k, c in f.terms.items()})
    return content, prim


def primitive(f: MultiPoly) -> MultiPoly:
    if f.is_zero():
        return f
    return content_and_primitive(f)[1]


def same_up_to_scalar(f: MultiPoly, g: MultiPoly) -> bool:
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    return primitive(f) == primitive(g)


# points ----------------------------------------------------------------


class PointProj:
    """A projective point stored via an explicit affine representative."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(to_rational(c) for c in coords)
        if not coords or all(c == 0 for c in coords):
            raise ValueError("projective point needs a nonzero coordinate")
        self.coords = coords

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def canonical(self):
        lead = next(c for c in self.coords if c != 0)
        return tuple(c / lead for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, PointProj):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def last_nonzero_index(self) -> int:
        return max(i for i, c in enumerate(self.coords) if c != 0)

    def __str__(self):
        return "(" + ",".join(format_rational(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"PointProj{self}"


# text format -----------------------------------------------------------

_ALIASES = {"a": ("a", 0), "b": ("a", 1), "c": ("a", 2), "x": ("x", 0), "y": ("x", 1), "z": ("x", 2)}
_ALIAS_NAMES = ("a", "b", "c", "x", "y", "z")


def _var_name(nb, i, aliases):
    if aliases and nb == 3:
        return _ALIAS_NAMES[i]
    b, j = divmod(i, nb)
    return f"{BLOCKS[b]}_{j}"


def format_poly(f: MultiPoly, aliases: bool = False) -> str:
    """Canonical text: terms in descending grlex order, e.g. ``-3/2*a_0^2*x_1 + x_0``."""
    if f.is_zero():
        return "0"
    nb = f.nb
    parts = []
    for k in sorted(f.terms, reverse=True):
        c = Fraction(f.terms[k])
        e = decode(nb, k)
        mono = "*".join(_var_name(nb, i, aliases) + (f"^{ei}" if ei > 1 else "")
                        for i, ei in enumerate(e) if ei)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([ax]_\d+|[a-z])|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 10]!r}")
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1))))
        elif m.group(2) is not None:
            toks.append(("var", m.group(2)))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text, nb):
        self.toks = _tokenize(text)
        self.i = 0
        self.nb = nb

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        if not self.toks:
            raise ValueError("empty polynomial")
        v = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input in polynomial: {self.peek()}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def _starts_factor(self):
        kind, val = self.peek()
        return kind in ("num", "var") or (kind, val) == ("op", "(")

    def term(self):
        v = self.unary()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                v = v * self.unary()
            elif (kind, val) == ("op", "/"):
                self.take()
                d = self.unary()
                if not d.is_constant() or d.is_zero():
                    raise ValueError("can only divide by nonzero constants")
                v = v.scale(1 / d.constant_value())
            elif self._starts_factor():
                v = v * self.power()
            else:
                return v

    def unary(self):
        kind, val = self.peek()
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.unary()
        if (kind, val) == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            return base ** val
        return base

    def atom(self):
        kind, val = self.take()
        nb = self.nb
        if kind == "num":
            return MultiPoly.constant(nb, val)
        if kind == "var":
            if "_" in val:
                block, idx = val.split("_")
                idx = int(idx)
                if idx >= nb:
                    raise ValueError(f"variable {val} out of range for n={nb - 1}")
                return MultiPoly.var(nb, block, idx)
            if nb != 3 or val not in _ALIASES:
                raise ValueError(f"unknown variable {val!r} (letter aliases need n = 2)")
            return MultiPoly.var(nb, *_ALIASES[val])
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return v
        raise ValueError(f"unexpected token {val!r}")


def parse_poly(text: str, n: int) -> MultiPoly:
    """Parse polynomial text over n+1 variables per block (a,b,c / x,y,z accepted for n = 2)."""
    return _Parser(text, n + 1).parse()
