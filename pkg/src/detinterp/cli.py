"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 a theorem check failed,
2 invalid input (unparsable file, dimension identity violated, engine cap).
"""

from __future__ import annotations

import argparse
import sys

from .analysis import (FactorNotDivisible, assemble_F, check_lines, strip_factors,
                       unexpected_locus_members)
from .arith import format_rational
from .det import DeterminantCapExceeded, rank_at_point
from .matrix import ScenarioError, build_interpolation_matrix, build_Kj
from .multipoly import format_poly, parse_poly
from .scenario_io import load_scenario, parse_point

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


def _tag(tag):
    if tag[0] == "partial":
        return "partial(" + ",".join(map(str, tag[1])) + ")"
    if tag[0] == "point":
        return f"point({tag[1]})"
    return "generic_x"


def cmd_build(args, out):
    s = load_scenario(args.scenario).validate()
    M = build_interpolation_matrix(s)
    out.append(f"N {M.size}")
    for i, (row, tag) in enumerate(zip(M.rows, M.row_tags), start=1):
        entries = "; ".join(format_poly(e, aliases=args.aliases) for e in row)
        out.append(f"row {i} {_tag(tag)}: {entries}")
    return EXIT_OK


def cmd_det(args, out):
    s = load_scenario(args.scenario).validate()
    F = assemble_F(s, engine=args.engine)
    out.append("ZERO" if F.is_zero else format_poly(F.F, aliases=args.aliases))
    return EXIT_OK


def cmd_verify(args, out):
    s = load_scenario(args.scenario).validate()
    B = parse_point(args.point, s.n)
    F = assemble_F(s)
    samples = [parse_point(p, s.n) for p in args.sample] if args.sample else ()
    lines = check_lines(F, B, sample_S=samples, moment_sets=args.moment_sets if args.all_theorems else 0)
    out.extend(lines)
    return EXIT_FAIL if any(line.split()[2] == "FAIL" for line in lines) else EXIT_OK


def cmd_rank(args, out):
    s = load_scenario(args.scenario).validate()
    B = parse_point(args.point, s.n)
    js = [args.j] if args.j else range(1, s.m + 1)
    for j in js:
        rows = build_Kj(s, j)
        out.append(f"K_{j} rows={len(rows)} rank={rank_at_point(rows, B)}")
    return EXIT_OK


def cmd_strip(args, out):
    s = load_scenario(args.scenario).validate()
    if args.factor:
        factors = []
        for spec in args.factor:
            text, _, mult = spec.partition(":")
            factors.append((parse_poly(text, s.n), int(mult or 1)))
    else:
        factors = list(s.factors)
    F = assemble_F(s)
    if F.is_zero:
        out.append("ZERO")
        return EXIT_OK
    try:
        rec = strip_factors(F, factors)
    except FactorNotDivisible as exc:
        out.append(f"NOT-DIVISIBLE factor={format_poly(exc.factor, aliases=args.aliases)} copy={exc.copy}")
        return EXIT_FAIL
    out.append(f"content {format_rational(rec.content)}")
    for f, k in rec.factors:
        out.append(f"factor {format_poly(f, aliases=args.aliases)} ^{k}")
    out.append(f"quotient {format_poly(rec.quotient, aliases=args.aliases)}")
    return EXIT_OK


def cmd_members(args, out):
    s = load_scenario(args.scenario).validate()
    if args.candidate:
        named = {c: parse_point(c, s.n) for c in args.candidate}
    else:
        named = {f"P_{i}": p for i, p in enumerate(s.points, start=1)}
        named.update(s.candidates)
    F = assemble_F(s)
    if F.is_zero:
        out.append("ZERO (every point is a member)")
        return EXIT_OK
    hits = set(unexpected_locus_members(F, list(named.values())))
    for name, p in named.items():
        out.append(f"{name} {p} {'member' if p in hits else 'not-member'}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="detinterp", description=__doc__.splitlines()[0])
    parser.add_argument("--aliases", action="store_true",
                        help="print a,b,c / x,y,z instead of a_i / x_i when n = 2")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="dump the interpolation matrix")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("det", help="print F = det M in canonical form, or ZERO")
    p.add_argument("scenario")
    p.add_argument("--engine", choices=("laplace", "bareiss", "reduced"), default="reduced")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("verify", help="run the theorem checks at a point B")
    p.add_argument("scenario")
    p.add_argument("--point", required=True, help="comma-separated exact coordinates, e.g. 3,5,7")
    p.add_argument("--all-theorems", action="store_true", help="include the moment identities")
    p.add_argument("--moment-sets", type=int, default=5)
    p.add_argument("--sample", action="append", help="extra point S for the F(a,S) multiplicity check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rank", help="ranks of K_j at B")
    p.add_argument("scenario")
    p.add_argument("--point", required=True)
    p.add_argument("--j", type=int)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("strip", help="divide out candidate a-block factors")
    p.add_argument("scenario")
    p.add_argument("--factor", action="append", help="polynomial[:multiplicity]")
    p.set_defaults(func=cmd_strip)

    p = sub.add_parser("members", help="which candidates S satisfy F(a,S) == 0")
    p.add_argument("scenario")
    p.add_argument("--candidate", action="append")
    p.set_defaults(func=cmd_members)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = []
    try:
        code = args.func(args, out)
    except (ScenarioError, DeterminantCapExceeded, ValueError, OSError) as exc:
        sys.stdout.write("".join(line + "\n" for line in out))
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    sys.stdout.write("".join(line + "\n" for line in out))
    return code


if __name__ == "__main__":
    sys.exit(main())
