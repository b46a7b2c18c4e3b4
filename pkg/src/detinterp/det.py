"""Exact determinants, cofactors and ranks of polynomial matrices.

Matrices are plain lists of rows of :class:`MultiPoly`.  Three determinant
routes are provided so they can check one another: Laplace expansion (small
sizes only), one-step fraction-free Bareiss elimination, and a structured
route that first eliminates the constant point rows over Q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import PrimeField, PrimeFieldElem, reduce_mod
from .matrix import InterpolationMatrix
from .multipoly import MultiPoly, decode, exact_divide

LAPLACE_CAP = 8


class DeterminantCapExceeded(ValueError):
    pass


class NotMonomialCofactor(ValueError):
    pass


def _nb(M):
    for row in M:
        for e in row:
            return e.nb
    raise ValueError("empty matrix")


def _square(M):
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("matrix is not square")
    return n


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    seen = [False] * len(seq)
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = seq[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# Laplace ---------------------------------------------------------------


def det_laplace(M, cap: int = LAPLACE_CAP) -> MultiPoly:
    n = _square(M)
    if n > cap:
        raise DeterminantCapExceeded(f"Laplace expansion capped at side {cap}, got {n}")
    nb = _nb(M)
    memo = {}

    def minor(row, cols):
        if row == n:
            return MultiPoly.constant(nb, 1)
        key = (row, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = MultiPoly.zero(nb)
        sign = 1
        for pos, c in enumerate(cols):
            e = M[row][c]
            if e.terms:
                sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
                if sub.terms:
                    term = e * sub
                    total = total + term if sign > 0 else total - term
            sign = -sign
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


# Bareiss ---------------------------------------------------------------


def _pivot_key(e, i, j):
    return (e.total_degree(), j, i)


def _bareiss(M):
    """Fraction-free elimination.  Returns (rank, sign, last pivot, reduced rows)."""
    A = [list(r) for r in M]
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    sign = 1
    prev = None
    rank = 0
    for k in range(min(nrows, ncols)):
        best = None
        for i in range(k, nrows):
            row = A[i]
            for j in range(k, ncols):
                e = row[j]
                if e.terms:
                    key = _pivot_key(e, i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, j, i = best
        if i != k:
            A[i], A[k] = A[k], A[i]
            sign = -sign
        if j != k:
            for row in A:
                row[j], row[k] = row[k], row[j]
            sign = -sign
        p = A[k][k]
        pivot_row = A[k]
        prev_const = prev is not None and prev.is_constant()
        prev_val = prev.constant_value() if prev_const else None
        for i in range(k + 1, nrows):
            row = A[i]
            aik = row[k]
            for j in range(k + 1, ncols):
                aij = row[j]
                akj = pivot_row[j]
                if aij.terms:
                    v = p * aij
                    if aik.terms and akj.terms:
                        v = v - aik * akj
                elif aik.terms and akj.terms:
                    v = -(aik * akj)
                else:
                    continue
                if prev is not None and v.terms:
                    v = v / prev_val if prev_const else exact_divide(v, prev)
                row[j] = v
            row[k] = MultiPoly.zero(p.nb)
        prev = p
        rank += 1
    return rank, sign, prev, A


def det_bareiss(M) -> MultiPoly:
    n = _square(M)
    nb = _nb(M)
    if n == 0:
        return MultiPoly.constant(nb, 1)
    rank, sign, last, _ = _bareiss(M)
    if rank < n:
        return MultiPoly.zero(nb)
    return last if sign > 0 else -last


def symbolic_rank(M) -> int:
    """Rank over the rational function field of the entries."""
    if not M or not M[0]:
        return 0
    C, P = _split_constant_rows(M)
    if not C:
        return _bareiss(M)[0]
    red = _reduce_constant_rows(M, C, P)
    rank_c = len(red.pivots)
    if not red.block or not red.block[0]:
        return rank_c
    return rank_c + _bareiss(red.block)[0]


# constant-row elimination ---------------------------------------------


def _split_constant_rows(M):
    C, P = [], []
    for idx, row in enumerate(M):
        (C if all(e.is_constant() for e in row) else P).append(idx)
    return C, P


@dataclass
class _Reduced:
    pivots: list            # pivot columns of the constant rows, selection order
    rref: list              # rows over Q with identity in pivot columns
    free: list              # non-pivot columns, ascending
    block: list             # Schur complement: polynomial rows on free columns


def _rref(rows):
    """Reduced row echelon form over Q.  Returns (pivot columns, rows)."""
    A = [list(r) for r in rows]
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / Fraction(A[r][c])
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return pivots, A[:r]


def rank_rational(rows) -> int:
    if not rows:
        return 0
    return len(_rref([[Fraction(v) for v in r] for r in rows])[0])


def det_rational(rows) -> Fraction:
    A = [[Fraction(v) for v in r] for r in rows]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return det


def _reduce_constant_rows(M, C, P):
    nb = _nb(M)
    const = [[M[i][j].constant_value() for j in range(len(M[i]))] for i in C]
    pivots, R = _rref(const)
    ncols = len(M[0])
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    block = []
    for i in P:
        row = M[i]
        new = []
        for kcol in free:
            v = row[kcol]
            for t, jcol in enumerate(pivots):
                coef = R[t][kcol]
                if coef != 0 and row[jcol].terms:
                    v = v - row[jcol].scale(coef)
            new.append(v)
        block.append(new)
    return _Reduced(pivots, R, free, block)


def _det_block(block, nb):
    """Determinant of the reduced polynomial block.

    If exactly one row involves the x-block, expand along it: the
    cofactors are minors of the a-only rows, whose rank is checked first.
    """
    n = len(block)
    if n == 0:
        return MultiPoly.constant(nb, 1)
    x_rows = [i for i, row in enumerate(block) if any(e.uses_block("x") for e in row)]
    if len(x_rows) != 1 or n == 1:
        return det_bareiss(block)
    xi = x_rows[0]
    others = [row for i, row in enumerate(block) if i != xi]
    if _bareiss(others)[0] < n - 1:
        return MultiPoly.zero(nb)
    total = MultiPoly.zero(nb)
    for j in range(n):
        e = block[xi][j]
        if not e.terms:
            continue
        sub = [[row[c] for c in range(n) if c != j] for row in others]
        cof = det_bareiss(sub)
        if (xi + j) % 2:
            cof = -cof
        total = total + e * cof
    return total


def det_point_row_reduced(M) -> MultiPoly:
    """Eliminate constant rows over Q, then take the determinant of the Schur block."""
    rows = M.as_lists() if isinstance(M, InterpolationMatrix) else [list(r) for r in M]
    n = _square(rows)
    nb = _nb(rows)
    C, P = _split_constant_rows(rows)
    if not C:
        return _det_block(rows, nb)
    red = _reduce_constant_rows(rows, C, P)
    if len(red.pivots) < len(C):
        return MultiPoly.zero(nb)
    const_J = [[rows[i][j].constant_value() for j in red.pivots] for i in C]
    dC = det_rational(const_J)
    sign = _perm_sign(C + P) * _perm_sign(red.pivots + red.free)
    d = _det_block(red.block, nb)
    return d.scale(dC * sign)


# cofactors ---------------------------------------------------------------


@dataclass
class CofactorStructure:
    cofactors: list                 # signed cofactor of each last-row entry
    last_row: list
    certified_zero: bool = False    # every cofactor vanishes because rank < N-1
    coeffs: list = field(default_factory=list)   # C_k (monomial case)
    alphas: list = field(default_factory=list)   # exponent vector of last-row entry k
    A: tuple | None = None                       # A_c with D_k = C_k a^(A - alpha_k)

    def reconstruct(self) -> MultiPoly:
        nb = self.last_row[0].nb
        total = MultiPoly.zero(nb)
        for e, c in zip(self.last_row, self.cofactors):
            if e.terms and c.terms:
                total = total + e * c
        return total


def cofactors_last_row(M, monomial: bool = False, engine: str = "reduced",
                       shortcut: bool = True) -> CofactorStructure:
    """Signed cofactors of the last-row entries, so det = sum_k entry_k * Cof_k.

    With ``shortcut`` a rank deficiency of the upper rows certifies every
    cofactor is zero without expanding them; otherwise each is computed.
    """
    rows = M.as_lists() if isinstance(M, InterpolationMatrix) else [list(r) for r in M]
    n = _square(rows)
    nb = _nb(rows)
    last = rows[-1]
    upper = rows[:-1]
    det = {"reduced": det_point_row_reduced, "bareiss": det_bareiss, "laplace": det_laplace}[engine]
    if shortcut and n > 1 and symbolic_rank(upper) < n - 1:
        cofs = [MultiPoly.zero(nb) for _ in range(n)]
        cs = CofactorStructure(cofs, last, certified_zero=True)
    else:
        cofs = []
        for k in range(n):
            sub = [[r[c] for c in range(n) if c != k] for r in upper]
            v = det(sub) if sub else MultiPoly.constant(nb, 1)
            cofs.append(v if (n - 1 + k) % 2 == 0 else -v)
        cs = CofactorStructure(cofs, last)
    if monomial:
        _extract_monomial_data(cs, nb)
    return cs


def _extract_monomial_data(cs, nb):
    A = None
    for k, (e, cof) in enumerate(zip(cs.last_row, cs.cofactors)):
        if len(e.terms) != 1:
            raise NotMonomialCofactor("not monomial-cofactor: last-row entry is not a monomial")
        (key, ce), = e.terms.items()
        alpha = decode(nb, key)[nb:]
        cs.alphas.append(alpha)
        if not cof.terms:
            cs.coeffs.append(Fraction(0))
            continue
        if len(cof.terms) != 1:
            raise NotMonomialCofactor("not monomial-cofactor: cofactor has several terms")
        (ck, cc), = cof.terms.items()
        cs.coeffs.append(Fraction(cc) * ce)
        expo = decode(nb, ck)[:nb]
        Ak = tuple(a + b for a, b in zip(expo, alpha))
        if A is None:
            A = Ak
        elif A != Ak:
            raise NotMonomialCofactor("not monomial-cofactor: inconsistent multidegree")
    cs.A = A


# ranks and probes -------------------------------------------------------


def rank_at_point(rows, B) -> int:
    """Exact rank over Q after substituting B for the a-block."""
    out = []
    for row in rows:
        vals = []
        for e in row:
            if e.is_constant():
                vals.append(e.constant_value())
            else:
                if e.uses_block("x"):
                    raise ValueError("entries must not involve the x-block")
                vals.append(e.evaluate(a_point=B).constant_value())
        out.append(vals)
    return rank_rational(out)


def random_point(nb: int, rng: random.Random, bound: int = 10**6):
    return tuple(rng.randint(-bound, bound) for _ in range(2 * nb))


def _eval_mod(e: MultiPoly, values, p):
    nb = e.nb
    total = 0
    for k, c in e.terms.items():
        v = reduce_mod(c, p).value if not isinstance(c, int) else c % p
        for x, ex in zip(values, decode(nb, k)):
            if ex:
                v = v * pow(x, ex, p) % p
        total += v
    return total % p


def det_modular_probe(M, p: int, point) -> PrimeFieldElem:
    """Determinant modulo p after substituting ``point`` for all 2(n+1) variables.

    A nonzero value certifies det != 0; a zero value proves nothing.
    """
    rows = M.as_lists() if isinstance(M, InterpolationMatrix) else [list(r) for r in M]
    n = _square(rows)
    field_ = PrimeField(p)
    values = [reduce_mod(v, p).value for v in point]
    A = [[_eval_mod(e, values, p) for e in row] for row in rows]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return field_(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv % p
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[c])]
    return field_(det)
