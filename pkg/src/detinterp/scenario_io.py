"""Scenario files: JSON with keys n, d, m, points and optional extras.

Coordinates are exact: JSON integers or rational strings such as "-2/3".
Floats are rejected.  Optional keys:

* ``candidates``: {name: coordinates} points to test for membership in Z'
* ``factors``: [[polynomial text, multiplicity], ...] candidate a-block factors
* ``reference_points``: a larger point list whose conditions are only rank-checked
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .arith import format_rational, to_rational
from .matrix import Scenario, ScenarioError
from .multipoly import PointProj, parse_poly

BUILTIN = ("b3", "f4", "p1")


def _coord(v):
    if isinstance(v, float):
        raise ScenarioError(f"floating-point coordinate {v!r} not allowed; use a rational string")
    try:
        return to_rational(v)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(str(exc)) from None


def parse_point(coords, n=None) -> PointProj:
    if isinstance(coords, str):
        coords = [c for c in coords.split(",")]
    pt = PointProj([_coord(c) for c in coords])
    if n is not None and len(pt) != n + 1:
        raise ScenarioError(f"point {pt} needs {n + 1} coordinates")
    return pt


def scenario_from_dict(data: dict) -> Scenario:
    for key in ("n", "d", "m", "points"):
        if key not in data:
            raise ScenarioError(f"missing key {key!r}")
    n, d, m = data["n"], data["d"], data["m"]
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in (n, d, m)):
        raise ScenarioError("n, d, m must be integers")
    points = tuple(parse_point(p, n) for p in data["points"])
    candidates = {name: parse_point(p, n) for name, p in data.get("candidates", {}).items()}
    factors = tuple((parse_poly(text, n), int(k)) for text, k in data.get("factors", []))
    reference = tuple(parse_point(p, n) for p in data.get("reference_points", []))
    return Scenario(n, d, m, points, name=data.get("name", ""), candidates=candidates,
                    factors=factors, reference_points=reference)


def scenario_to_dict(s: Scenario) -> dict:
    out = {"name": s.name, "n": s.n, "d": s.d, "m": s.m,
           "points": [[format_rational(c) for c in p] for p in s.points]}
    if s.candidates:
        out["candidates"] = {k: [format_rational(c) for c in p] for k, p in s.candidates.items()}
    return out


def fixture_path(name: str):
    return resources.files("detinterp") / "fixtures" / f"{name}.scn"


def load_scenario(source) -> Scenario:
    """Load from a path, or from a built-in fixture name ('b3', 'f4', 'p1')."""
    src = str(source)
    stem = Path(src).stem
    if not Path(src).exists() and stem in BUILTIN:
        text = fixture_path(stem).read_text()
    else:
        text = Path(src).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file is not valid JSON: {exc}") from None
    return scenario_from_dict(data)
