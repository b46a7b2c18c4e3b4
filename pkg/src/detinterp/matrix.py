"""Scenarios and the interpolation matrices built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .multipoly import MultiPoly, PointProj


class ScenarioError(ValueError):
    """Scenario data violates the construction's preconditions."""


def check_dimension_identity(n: int, d: int, m: int, r: int) -> bool:
    return comb(d + n, n) == comb(m + n - 1, n) + r + 1


def dimension_sides(n, d, m, r):
    return comb(d + n, n), comb(m + n - 1, n) + r + 1


def exponent_tuples(nvars: int, degree: int):
    """All exponent tuples of the given total degree, lex-descending."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in exponent_tuples(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def monomial_basis(n: int, d: int):
    """Exponents of all degree-d monomials in a_0..a_n, graded-lex descending."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    return tuple(exponent_tuples(n + 1, d))


@dataclass(frozen=True)
class Scenario:
    n: int
    d: int
    m: int
    points: tuple
    name: str = ""
    candidates: dict = field(default_factory=dict, compare=False)
    factors: tuple = field(default=(), compare=False)
    reference_points: tuple = field(default=(), compare=False)

    def __post_init__(self):
        for name in ("points", "reference_points"):
            pts = tuple(p if isinstance(p, PointProj) else PointProj(p) for p in getattr(self, name))
            object.__setattr__(self, name, pts)

    @property
    def r(self) -> int:
        return len(self.points)

    @property
    def nb(self) -> int:
        return self.n + 1

    @property
    def N(self) -> int:
        return comb(self.d + self.n, self.n)

    @property
    def num_partial_rows(self) -> int:
        return comb(self.m + self.n - 1, self.n)

    @property
    def expected_bidegree(self):
        return (self.num_partial_rows * (self.d - self.m + 1), self.d)

    def validate(self):
        if self.n < 1:
            raise ScenarioError("n must be at least 1")
        if not self.d >= self.m >= 1:
            raise ScenarioError(f"need d >= m >= 1, got d={self.d}, m={self.m}")
        for p in self.points:
            if len(p) != self.n + 1:
                raise ScenarioError(f"point {p} does not have n+1 = {self.n + 1} coordinates")
        if len(set(self.points)) != len(self.points):
            raise ScenarioError("points are not pairwise distinct")
        if not check_dimension_identity(self.n, self.d, self.m, self.r):
            lhs, rhs = dimension_sides(self.n, self.d, self.m, self.r)
            raise ScenarioError(
                f"dimension identity fails: binom(d+n,n) = {lhs} != "
                f"binom(m+n-1,n) + r + 1 = {rhs}")
        return self


@dataclass(frozen=True)
class InterpolationMatrix:
    rows: tuple
    row_tags: tuple
    basis: tuple
    scenario: Scenario | None = None

    @property
    def size(self) -> int:
        return len(self.rows)

    def as_lists(self):
        return [list(r) for r in self.rows]


def _monomial_row(nb, basis, block):
    return [MultiPoly.monomial(nb, e, None) if block == "a" else MultiPoly.monomial(nb, None, e)
            for e in basis]


def partial_row(nb, basis, multi_index):
    """The row  d^t w / d a^t  for the monomial vector w."""
    w = _monomial_row(nb, basis, "a")
    return [f.partial("a", multi_index) for f in w]


def point_row(nb, basis, point):
    row = []
    for e in basis:
        v = 1
        for c, k in zip(point.coords, e):
            v *= c ** k
        row.append(MultiPoly.constant(nb, v))
    return row


def build_interpolation_matrix(s: Scenario) -> InterpolationMatrix:
    s.validate()
    nb = s.nb
    basis = monomial_basis(s.n, s.d)
    rows, tags = [], []
    for t in exponent_tuples(nb, s.m - 1):
        rows.append(tuple(partial_row(nb, basis, t)))
        tags.append(("partial", t))
    for i, p in enumerate(s.points, start=1):
        rows.append(tuple(point_row(nb, basis, p)))
        tags.append(("point", i))
    rows.append(tuple(_monomial_row(nb, basis, "x")))
    tags.append(("generic_x",))
    return InterpolationMatrix(tuple(rows), tuple(tags), basis, s)


def build_Kj(s: Scenario, j: int):
    """Order-(j-1) partial rows of w followed by the r point rows.

    Evaluated at B these span the conditions imposed by jB together with Z.
    Row count binom(n+j-1, n) + r; K_m is M without its generic row.
    """
    if not 1 <= j <= s.m:
        raise ValueError(f"j must lie in 1..{s.m}")
    nb = s.nb
    basis = monomial_basis(s.n, s.d)
    rows = [partial_row(nb, basis, t) for t in exponent_tuples(nb, j - 1)]
    rows += [point_row(nb, basis, p) for p in s.points]
    return rows


def build_submatrix_S(s: Scenario, columns):
    """Partial rows plus the generic row, restricted to ``columns``."""
    cols = list(columns)
    need = s.num_partial_rows + 1
    if len(cols) != need:
        raise ValueError(f"need exactly {need} columns, got {len(cols)}")
    if len(set(cols)) != len(cols):
        raise ValueError("repeated column index")
    if any(not 0 <= c < s.N for c in cols):
        raise ValueError("column index out of range")
    cols = sorted(cols)
    M = build_interpolation_matrix(s)
    keep = [r for r, tag in zip(M.rows, M.row_tags) if tag[0] != "point"]
    return [[row[c] for c in cols] for row in keep]


def build_euler_reduced(s: Scenario):
    """Rows of the Euler-reduced matrix, with the a_0 prefactor exponents.

    Row (order o, multi-index t in a_1..a_n) is d^t w carrying the Laurent
    prefactor a_0^-(m-1-o); point rows and the generic row carry none.  The
    returned rows are polynomial; the prefactors come back separately.
    """
    s.validate()
    nb = s.nb
    basis = monomial_basis(s.n, s.d)
    rows, exps = [], []
    for order in range(s.m):
        for t in exponent_tuples(s.n, order):
            rows.append(partial_row(nb, basis, (0,) + t))
            exps.append(s.m - 1 - order)
    for p in s.points:
        rows.append(point_row(nb, basis, p))
        exps.append(0)
    rows.append(_monomial_row(nb, basis, "x"))
    exps.append(0)
    return rows, exps
