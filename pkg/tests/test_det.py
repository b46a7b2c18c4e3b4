import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detinterp.arith import PRIMES, reduce_mod
from detinterp.det import (DeterminantCapExceeded, cofactors_last_row, det_bareiss, det_laplace,
                           det_modular_probe, det_point_row_reduced, det_rational, rank_at_point,
                           rank_rational, symbolic_rank)
from detinterp.matrix import build_interpolation_matrix, build_Kj
from detinterp.multipoly import MultiPoly, parse_poly
from strategies import polys


def const_matrix(rows, nb=1):
    return [[MultiPoly.constant(nb, v) for v in r] for r in rows]


@st.composite
def poly_matrices(draw, nb=2, max_size=4, const_rows=True):
    n = draw(st.integers(1, max_size))
    rows = []
    for _ in range(n):
        if const_rows and draw(st.booleans()):
            rows.append([MultiPoly.constant(nb, draw(st.integers(-9, 9))) for _ in range(n)])
        else:
            rows.append([draw(polys(nb=nb, max_deg=2, max_terms=2)) for _ in range(n)])
    return rows


def test_small_known_determinants():
    assert det_laplace(const_matrix([[1, 2], [3, 4]])).constant_value() == -2
    assert det_rational([[2, 0, 1], [1, 3, 2], [1, 1, 1]]) == 2 * (3 - 2) - 0 + 1 * (1 - 3)
    assert rank_rational([[1, 2], [2, 4]]) == 1


def test_p1_determinant_by_hand(F_p1):
    # at a = (1,0): 3 * det[[1,1],[x y^2, y^3]] = 3 y^2 (y - x)
    assert F_p1.F.evaluate(a_point=(1, 0)) == parse_poly("3*x_1^3 - 3*x_0*x_1^2", 1)


def test_engines_agree_on_b3(b3, F_b3):
    M = build_interpolation_matrix(b3)
    assert det_bareiss(M.as_lists()) == F_b3.F


def test_laplace_cap():
    M = const_matrix([[int(i == j) for j in range(9)] for i in range(9)])
    with pytest.raises(DeterminantCapExceeded):
        det_laplace(M)
    assert det_laplace(M, cap=9).constant_value() == 1


@given(poly_matrices())
@settings(max_examples=60, deadline=None)
def test_strategies_agree(M):
    L = det_laplace(M)
    assert det_bareiss(M) == L
    assert det_point_row_reduced(M) == L


@given(poly_matrices(max_size=4))
@settings(max_examples=40, deadline=None)
def test_cofactor_reconstruction(M):
    cs = cofactors_last_row(M, shortcut=False)
    assert cs.reconstruct() == det_laplace(M)
    cs2 = cofactors_last_row(M)
    assert cs2.reconstruct() == det_laplace(M)
    assert [c.is_zero() for c in cs2.cofactors] == [c.is_zero() for c in cs.cofactors]


@given(poly_matrices(max_size=3, const_rows=False), st.sampled_from(["a", "x"]), st.integers(0, 1))
@settings(max_examples=40, deadline=None)
def test_derivative_of_determinant(M, block, i):
    # d det M = sum over rows of det(M with that row differentiated)
    lhs = det_laplace(M).derivative(block, i)
    rhs = MultiPoly.zero(2)
    for k in range(len(M)):
        Mk = [row if j != k else [e.derivative(block, i) for e in row] for j, row in enumerate(M)]
        rhs = rhs + det_laplace(Mk)
    assert lhs == rhs


def test_symbolic_rank():
    x = MultiPoly.var(1, "x", 0)
    one = MultiPoly.constant(1, 1)
    assert symbolic_rank([[x, one], [x * x, x]]) == 1
    assert symbolic_rank([[x, one], [one, x]]) == 2


@pytest.mark.parametrize("B, j, rank", [
    ((3, 5, 7), 1, 9),      # eight distinct points plus B impose nine conditions
    ((1, 0, 0), 1, 8),      # B = P_1 repeats a condition
    ((0, 5, 7), 3, 13),     # B on the line a = 0 is superabundant for triple points
])
def test_kj_ranks(b3, B, j, rank):
    assert rank_at_point(build_Kj(b3, j), B) == rank


def test_modular_probe_matches_exact(b3, printed_F):
    M = build_interpolation_matrix(b3)
    rng = random.Random(11)
    for p in PRIMES[:3]:
        pt = [rng.randint(-50, 50) for _ in range(6)]
        exact = printed_F.evaluate(pt[:3], pt[3:]).constant_value()
        assert det_modular_probe(M, p, pt) == reduce_mod(exact, p)
    # a point on a + b - c = 0 makes F vanish identically in x
    assert det_modular_probe(M, PRIMES[0], [1, 2, 3, 4, 5, 6]).value == 0


def test_modular_probe_rationals():
    M = const_matrix([[Fraction(1, 2), 1], [3, 4]])
    # det = 2 - 3 = -1
    assert det_modular_probe(M, 101, [0, 0]) == reduce_mod(-1, 101)
