"""Reproduce the F4 example: det M vanishes identically for Z' = 23 root points + one extra."""

import time

from detinterp.analysis import assemble_F
from detinterp.det import rank_at_point, symbolic_rank
from detinterp.matrix import build_interpolation_matrix, point_row, monomial_basis
from detinterp.scenario_io import load_scenario


def main():
    s = load_scenario("f4")
    t0 = time.perf_counter()
    F = assemble_F(s)
    print("det M:", "ZERO" if F.is_zero else "nonzero", f"({time.perf_counter() - t0:.2f} s)")

    M = build_interpolation_matrix(s)
    print(f"symbolic rank of the upper {M.size - 1} rows: {symbolic_rank(M.as_lists()[:-1])}")

    basis = monomial_basis(s.n, s.d)
    ref = [point_row(s.nb, basis, p) for p in s.reference_points]
    print(f"{len(ref)} root points impose {rank_at_point(ref, (1, 0, 0, 0))} conditions on quartics")
    used = [point_row(s.nb, basis, p) for p in s.points]
    print(f"{len(used)} fixture points impose {rank_at_point(used, (1, 0, 0, 0))} conditions")


if __name__ == "__main__":
    main()
