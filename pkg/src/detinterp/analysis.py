"""Theorem checks on the bihomogeneous determinant F = det M.

Everything here is exact.  Genericity of test points is never assumed: each
check either certifies its hypothesis (F_L != 0, multiplicity exactly m, ...)
or reports that the hypothesis fails.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .det import (CofactorStructure, cofactors_last_row, det_bareiss, det_laplace,
                  det_point_row_reduced, rank_at_point)
from .matrix import (Scenario, build_interpolation_matrix, build_Kj, build_submatrix_S,
                     exponent_tuples)
from .multipoly import (MultiPoly, NotDivisible, PointProj, content_and_primitive,
                        exact_divide, primitive)

PASS, FAIL, HYPOTHESIS_VIOLATED = "PASS", "FAIL", "HYPOTHESIS-VIOLATED"


def _point(P) -> PointProj:
    return P if isinstance(P, PointProj) else PointProj(P)


@dataclass
class BihomForm:
    F: MultiPoly
    scenario: Scenario
    bidegree: tuple | None
    _cofactors: CofactorStructure | None = field(default=None, repr=False)

    @property
    def is_zero(self) -> bool:
        return self.F.is_zero()

    def cofactors(self) -> CofactorStructure:
        if self._cofactors is None:
            self._cofactors = cofactors_last_row(build_interpolation_matrix(self.scenario))
        return self._cofactors


class BidegreeMismatch(AssertionError):
    pass


def assemble_F(s: Scenario, engine: str = "reduced") -> BihomForm:
    M = build_interpolation_matrix(s)
    if engine == "reduced":
        F = det_point_row_reduced(M)
    elif engine == "bareiss":
        F = det_bareiss(M.as_lists())
    elif engine == "laplace":
        F = det_laplace(M.as_lists())
    else:
        raise ValueError(f"unknown engine {engine!r}")
    if F.is_zero():
        return BihomForm(F, s, None)
    if not F.is_bihomogeneous() or F.bidegree() != s.expected_bidegree:
        raise BidegreeMismatch(f"F has block degrees {sorted(F.block_degrees())}, "
                               f"expected {s.expected_bidegree}")
    return BihomForm(F, s, F.bidegree())


def _as_poly(F):
    return F.F if isinstance(F, BihomForm) else F


def specialize(F, block, P) -> MultiPoly:
    """F_L = F(B, x) for block 'first'; F(a, S) for block 'second'.

    Use :func:`right_specialization` for F_R = F(x, B) written in x.
    """
    F = _as_poly(F)
    P = _point(P)
    if block in ("first", "a", 0):
        return F.evaluate(a_point=P)
    if block in ("second", "x", 1):
        return F.evaluate(x_point=P)
    raise ValueError(f"unknown block {block!r}")


def right_specialization(F, B) -> MultiPoly:
    """F_R(x) = F(x, B): substitute B for the x-block, then rename a -> x."""
    return specialize(F, "second", B).swap_blocks()


def _single_block(f: MultiPoly) -> str:
    ua, ux = f.uses_block("a"), f.uses_block("x")
    if ua and ux:
        raise ValueError("polynomial must involve a single variable block")
    return "x" if ux else "a"


def vanishing_order_at(f: MultiPoly, P, block: str | None = None) -> int:
    """Multiplicity of the hypersurface f = 0 at P.

    Dehomogenises at the largest-index nonzero coordinate of P and returns
    the lowest degree occurring in the Taylor expansion there.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no vanishing order")
    P = _point(P)
    block = block or _single_block(f)
    return f.translate(block, P, P.last_nonzero_index()).min_block_degree(block)


@dataclass
class TangentCone:
    point: PointProj
    order: int
    poly: MultiPoly

    def normalized(self) -> MultiPoly:
        return primitive(self.poly)


def order_m_partials(f: MultiPoly, P, m: int, block: str):
    """{multi-index t with |t| = m: (d^t f)(P)}, exact rationals."""
    P = _point(P)
    nb = f.nb
    out = {}
    for t in exponent_tuples(nb, m):
        g = f.partial(block, t)
        g = g.evaluate(a_point=P) if block == "a" else g.evaluate(x_point=P)
        out[t] = g.constant_value()
    return out


def tangent_cone(f: MultiPoly, P, m: int, block: str | None = None) -> TangentCone:
    """sum over |j| = m of (1/j!) (d^j f)(P) v^j."""
    P = _point(P)
    block = block or _single_block(f)
    order = vanishing_order_at(f, P, block)
    if order != m:
        raise ValueError(f"multiplicity at {P} is {order}, not {m}")
    nb = f.nb
    cone = MultiPoly.zero(nb)
    for t, val in order_m_partials(f, P, m, block).items():
        if val == 0:
            continue
        denom = 1
        for ti in t:
            denom *= factorial(ti)
        mono = MultiPoly.monomial(nb, t, None) if block == "a" else MultiPoly.monomial(nb, None, t)
        cone = cone + mono.scale(Fraction(val) / denom)
    return TangentCone(P, m, cone)


@dataclass
class DualityReport:
    point: PointProj
    m: int
    hypothesis_violated: bool = False
    pairs: dict = field(default_factory=dict)      # t -> (dF_L(B), dF_R(B), ok)
    order_L: int | None = None
    order_R: int | None = None
    cones_equal: bool | None = None
    cone_L: MultiPoly | None = None
    cone_R: MultiPoly | None = None

    @property
    def sign(self) -> int:
        return (-1) ** self.m

    @property
    def partials_ok(self) -> bool:
        return all(ok for _, _, ok in self.pairs.values())

    @property
    def passed(self) -> bool:
        return not self.hypothesis_violated and self.partials_ok and self.cones_equal is not False


def check_bmss_duality(F, B) -> DualityReport:
    s = F.scenario
    m = s.m
    B = _point(B)
    rep = DualityReport(B, m)
    FL = specialize(F, "first", B)
    if FL.is_zero():
        rep.hypothesis_violated = True
        return rep
    FR = right_specialization(F, B)
    dL = order_m_partials(FL, B, m, "x")
    dR = order_m_partials(FR, B, m, "x") if not FR.is_zero() else {t: Fraction(0) for t in dL}
    sign = (-1) ** m
    rep.pairs = {t: (dL[t], dR[t], dL[t] == sign * dR[t]) for t in dL}
    rep.order_L = vanishing_order_at(FL, B, "x")
    rep.order_R = vanishing_order_at(FR, B, "x") if not FR.is_zero() else None
    if rep.order_L == m:
        rep.cone_L = tangent_cone(FL, B, m, "x").normalized()
        rep.cone_R = tangent_cone(FR, B, m, "x").normalized() if rep.order_R == m else None
        rep.cones_equal = rep.cone_R is not None and rep.cone_L == rep.cone_R
    return rep


def lemma_moment_identities(cs: CofactorStructure, m: int) -> bool:
    """sum_k C_k prod_i alpha_{k,i}^{t_i} == 0 for every |t| <= m-1 (0^0 = 1)."""
    return all(v == 0 for v in moment_sums(cs, m).values())


def moment_sums(cs: CofactorStructure, m: int):
    if not cs.alphas:
        raise ValueError("not monomial-cofactor: no extracted exponent data")
    nb = len(cs.alphas[0])
    out = {}
    for h in range(m):
        for t in exponent_tuples(nb, h):
            total = Fraction(0)
            for C, alpha in zip(cs.coeffs, cs.alphas):
                term = Fraction(C)
                for a, ti in zip(alpha, t):
                    term *= a ** ti
                total += term
            out[t] = total
    return out


def s_matrix_cofactors(s: Scenario, columns) -> CofactorStructure:
    return cofactors_last_row(build_submatrix_S(s, columns), monomial=True, engine="bareiss")


def sample_column_sets(s: Scenario, count: int, seed: int = 0, nonzero: bool = True):
    """Deterministically sample column subsets of size binom(m+n-1,n)+1 with cofactors.

    With ``nonzero`` only subsets giving at least one nonzero cofactor are kept.
    """
    rng = random.Random(seed)
    size = s.num_partial_rows + 1
    all_sets = list(combinations(range(s.N), size))
    rng.shuffle(all_sets)
    out = []
    for cols in all_sets:
        cs = s_matrix_cofactors(s, cols)
        if nonzero and all(c == 0 for c in cs.coeffs):
            continue
        out.append((cols, cs))
        if len(out) == count:
            break
    return out


@dataclass
class SuperabundanceReport:
    point: PointProj
    ranks: dict           # j -> rank of K_j(B)
    dims: dict            # j -> dim L_j
    expected: dict        # j -> expected dim L_j
    k_j: dict
    k: int
    membership_order: int | None    # None: F == 0, so every order vanishes

    @property
    def verified(self) -> bool:
        return self.membership_order is None or self.membership_order >= self.k


def membership_order(F: MultiPoly, B) -> int | None:
    """Largest v with every a-partial of F of order <= v-1 vanishing at B."""
    if F.is_zero():
        return None
    B = _point(B)
    return F.translate("a", B, B.last_nonzero_index()).min_block_degree("a")


def superabundance(s: Scenario, B, F=None) -> SuperabundanceReport:
    s.validate()
    B = _point(B)
    N = s.N
    ranks, dims, expected, kj = {}, {}, {}, {}
    for j in range(1, s.m + 1):
        ranks[j] = rank_at_point(build_Kj(s, j), B)
        dims[j] = N - ranks[j]
        expected[j] = N - comb(s.n + j - 1, s.n) - s.r
        kj[j] = max(0, dims[j] - expected[j])
    if F is None:
        F = assemble_F(s)
    order = membership_order(_as_poly(F), B)
    return SuperabundanceReport(B, ranks, dims, expected, kj, sum(kj.values()), order)


@dataclass
class FactorizationRecord:
    factors: list          # (MultiPoly, multiplicity)
    quotient: MultiPoly    # primitive G
    content: Fraction

    def product(self) -> MultiPoly:
        out = self.quotient.scale(self.content)
        for f, k in self.factors:
            out = out * f ** k
        return out


class FactorNotDivisible(NotDivisible):
    def __init__(self, factor, copy):
        super().__init__(f"not divisible by {factor} (copy {copy})")
        self.factor = factor
        self.copy = copy


def strip_factors(F, factors) -> FactorizationRecord:
    q = _as_poly(F)
    if q.is_zero():
        raise ValueError("cannot strip factors from the zero polynomial")
    for f, mult in factors:
        if f.is_zero():
            raise ValueError("factor must be nonzero")
        if f.uses_block("x"):
            raise ValueError("factors must involve the a-block only")
        for copy in range(1, mult + 1):
            try:
                q = exact_divide(q, f)
            except NotDivisible:
                raise FactorNotDivisible(f, copy) from None
    content, G = content_and_primitive(q)
    return FactorizationRecord(list(factors), G, content)


def unexpected_locus_members(F, candidates):
    """Candidates S with F(a, S) identically zero."""
    return [S for S in map(_point, candidates) if specialize(F, "second", S).is_zero()]


# report ------------------------------------------------------------------


def _fmt_point(P):
    return str(_point(P))


def check_lines(F: BihomForm, B, sample_S=(), moment_sets: int = 5):
    """One ``CHECK <name> <status> <details>`` line per theorem check."""
    s = F.scenario
    B = _point(B)
    lines = []

    def add(name, status, details):
        lines.append(f"CHECK {name} {status} {details}")

    if F.is_zero:
        add("bidegree", PASS, "F == 0 (identically zero determinant)")
    else:
        add("bidegree", PASS if F.bidegree == s.expected_bidegree else FAIL,
            f"bidegree={F.bidegree} expected={s.expected_bidegree}")

    if not F.is_zero:
        FL = specialize(F, "first", B)
        if FL.is_zero():
            add("multiplicity-at-B", HYPOTHESIS_VIOLATED, f"F_L == 0 at B={B}")
        else:
            v = vanishing_order_at(FL, B, "x")
            add("multiplicity-at-B", PASS if v >= s.m else FAIL, f"order(F_L,B)={v} m={s.m}")
        for S in sample_S or (B,):
            S = _point(S)
            FS = specialize(F, "second", S)
            if FS.is_zero():
                add("multiplicity-at-S-and-Z", HYPOTHESIS_VIOLATED, f"F_S == 0 at S={S}")
                continue
            orders = [vanishing_order_at(FS, P, "a") for P in s.points + (S,)]
            ok = all(o >= s.m for o in orders)
            add("multiplicity-at-S-and-Z", PASS if ok else FAIL,
                f"S={S} orders(P_1..P_r,S)={orders} m={s.m}")

        rep = check_bmss_duality(F, B)
        if rep.hypothesis_violated:
            add("bmss-partials", HYPOTHESIS_VIOLATED, f"F_L == 0 at B={B}")
            add("tangent-cones", HYPOTHESIS_VIOLATED, f"F_L == 0 at B={B}")
        else:
            bad = sum(1 for *_, ok in rep.pairs.values() if not ok)
            add("bmss-partials", PASS if rep.partials_ok else FAIL,
                f"{len(rep.pairs) - bad}/{len(rep.pairs)} order-{s.m} partials satisfy dF_L = {rep.sign:+d}*dF_R")
            if rep.cones_equal is None:
                add("tangent-cones", HYPOTHESIS_VIOLATED, f"order(F_L,B)={rep.order_L} != m={s.m}")
            else:
                add("tangent-cones", PASS if rep.cones_equal else FAIL,
                    f"cone={rep.cone_L}" if rep.cones_equal else f"cone_L={rep.cone_L} cone_R={rep.cone_R}")

        if moment_sets:
            sets = sample_column_sets(s, moment_sets)
            ok = all(lemma_moment_identities(cs, s.m) for _, cs in sets)
            nid = sum(comb(s.n + h, s.n) for h in range(s.m))
            add("moment-identities", PASS if ok else FAIL,
                f"{len(sets)} column sets x {nid} identities")

    sa = superabundance(s, B, F.F)
    kj = " ".join(f"k_{j}={v}" for j, v in sa.k_j.items())
    order = "inf" if sa.membership_order is None else sa.membership_order
    add("superabundance", PASS if sa.verified else FAIL, f"B={B} {kj} k={sa.k} membership_order={order}")

    if not F.is_zero:
        members = unexpected_locus_members(F, s.points)
        add("z-membership", PASS if len(members) == s.r else FAIL,
            f"{len(members)}/{s.r} points of Z satisfy F(a,P) == 0")
        extra = s.candidates
        if extra:
            hits = unexpected_locus_members(F, list(extra.values()))
            names = [k for k, v in extra.items() if _point(v) in hits]
            add("unexpected-locus", PASS, "members=" + (",".join(names) or "none"))
    return lines
