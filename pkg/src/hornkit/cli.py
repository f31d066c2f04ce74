"""Command-line front end: parse system descriptions, run analyses, and emit
JSON reports or SVG figures.

Exit codes: 0 success, 2 parse/usage error, 3 precondition violation.
Errors are written as JSON objects on stderr.
"""

from __future__ import annotations

import json
import os
import sys

import click

from .counting import (
    convergent_count_S,
    fully_supported_count,
    holonomic_rank,
    persistent_dim,
)
from .polygon import Kind, build_polygon, classify, vertex_count
from .puiseux import PuiseuxPolynomial, format_rational
from .render import polygon_svg, supports_svg
from .series import (
    ResonantCollisionError,
    branch_base_points,
    default_window,
    harvest_polynomials,
    series_from_submatrix,
    submatrices,
)
from .solver import (
    check_constructive,
    persistent_solutions,
    suggest_polynomial_parameters,
    validate_persistence,
)
from .system import HornSystem, check_nonconfluent, detect_resonance


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message
        super().__init__(message)


def _fail(code: int, message: str):
    json.dump({"error": message}, sys.stderr)
    sys.stderr.write("\n")
    sys.exit(code)


def _load_system(path: str) -> HornSystem:
    try:
        with open(path) as fh:
            data = json.load(fh)
        return HornSystem.from_json(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        _fail(2, f"cannot parse system file {path}: {exc}")


def _resolve_window(s: HornSystem, window: int | None) -> int:
    if window is not None:
        return window
    env = os.environ.get("HORNKIT_WINDOW")
    if env:
        try:
            return int(env)
        except ValueError:
            _fail(2, f"HORNKIT_WINDOW is not an integer: {env!r}")
    return default_window(s)


def _emit(payload, out: str | None):
    text = json.dumps(payload, indent=1)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _require_nonconfluent(s: HornSystem, allow: bool):
    if not check_nonconfluent(s) and not allow:
        _fail(3, "system is confluent; pass --allow-confluent to proceed")


def _solution_json(p: PuiseuxPolynomial, persistent: bool) -> dict:
    return {"terms": p.to_json(), "persistent": persistent, "verified": True}


@click.group()
def main():
    """Exact analysis of bivariate nonconfluent Horn hypergeometric systems."""


_input_arg = click.argument("input_path", metavar="INPUT.json")
_window_opt = click.option("--window", type=int, default=None,
                           help="lattice window radius (default: rank-based)")
_out_opt = click.option("--out", type=click.Path(), default=None,
                        help="write output to a file instead of stdout")


@main.command()
@_input_arg
@_window_opt
@_out_opt
@click.option("--allow-confluent", is_flag=True, default=False)
def analyze(input_path, window, out, allow_confluent):
    """Full analysis report for a system."""
    s = _load_system(input_path)
    _require_nonconfluent(s, allow_confluent)
    if not check_nonconfluent(s):
        # confluent systems only get the resonance block
        res = detect_resonance(s)
        _emit({"name": s.name, "nonconfluent": False,
               "resonance": _resonance_json(res)}, out)
        return
    w = _resolve_window(s, window)
    p = build_polygon(s)
    cls = classify(p)
    res = detect_resonance(s)
    persistent = persistent_solutions(s)
    harvest = harvest_polynomials(s, w)
    finite = [r.polynomial for r in harvest if r.outcome == "finite"]
    from .solver import independent_dimension

    merged = list({q.normalized() for q in persistent} | {q.normalized() for q in finite})
    rank = holonomic_rank(s)
    independent = independent_dimension(merged)
    report = {
        "name": s.name,
        "nonconfluent": True,
        "rank": rank,
        "persistent_dim": persistent_dim(s),
        "fully_supported_count": fully_supported_count(s),
        "S_per_vertex": [convergent_count_S(s, i) for i in range(vertex_count(p))],
        "polygon": _polygon_json(p),
        "classification": _classification_json(cls),
        "resonance": _resonance_json(res),
        "persistent_solutions": [_solution_json(q, True) for q in persistent],
        "harvested_polynomial_count": len(finite),
        "independent_polynomial_count": independent,
        "rank_attained": independent == rank,
        "window": w,
    }
    _emit(report, out)


def _polygon_json(p) -> dict:
    return {
        "edges": [
            {"direction": [e.direction.a, e.direction.b], "length": e.length,
             "normal": [e.normal.a, e.normal.b]}
            for e in p.edges
        ],
        "vertices": [[v.a, v.b] for v in p.vertices],
    }


def _classification_json(cls) -> dict:
    data = {"kind": cls.kind.value}
    data["segments"] = [
        {"direction": [seg.direction.a, seg.direction.b], "length": seg.length}
        for seg in cls.segments
    ]
    if cls.triangle is not None:
        data["triangle"] = [
            {"direction": [seg.direction.a, seg.direction.b], "length": seg.length}
            for seg in cls.triangle.edges
        ]
    return data


def _resonance_json(res) -> dict:
    return {
        "is_resonant": res.is_resonant,
        "is_maximally_resonant": res.is_maximally_resonant,
        "circuits": [
            {"indices": list(c.indices), "relation": list(c.relation),
             "resonant": c.resonant}
            for c in res.circuits
        ],
    }


@main.command()
@_input_arg
@_out_opt
def rank(input_path, out):
    """Holonomic rank."""
    s = _load_system(input_path)
    _require_nonconfluent(s, False)
    _emit({"name": s.name, "rank": holonomic_rank(s)}, out)


@main.command("classify")
@_input_arg
@_out_opt
def classify_cmd(input_path, out):
    """Polygon construction and shape classification."""
    s = _load_system(input_path)
    _require_nonconfluent(s, False)
    p = build_polygon(s)
    cls = classify(p)
    _emit({
        "name": s.name,
        "polygon": _polygon_json(p),
        "classification": _classification_json(cls),
        "maximally_reducible": cls.kind is not Kind.OTHER,
    }, out)


@main.command()
@_input_arg
@_window_opt
@_out_opt
def solve(input_path, window, out):
    """Persistent and harvested Puiseux polynomial solutions."""
    s = _load_system(input_path)
    if not check_nonconfluent(s) and s.m != 2:
        _fail(3, "solve requires a nonconfluent system or a bare atomic pair")
    w = _resolve_window(s, window)
    persistent = persistent_solutions(s)
    harvest = harvest_polynomials(s, w)
    seen = {q.normalized() for q in persistent}
    solutions = [_solution_json(q, True) for q in persistent]
    for r in harvest:
        if r.outcome == "finite" and r.polynomial.normalized() not in seen:
            seen.add(r.polynomial.normalized())
            solutions.append(_solution_json(r.polynomial, False))
    collisions = [
        {"subsystem": list(r.subsystem), "branch": r.branch,
         "point": [format_rational(r.collision_point[0]),
                   format_rational(r.collision_point[1])]}
        for r in harvest if r.outcome == "resonant_collision"
    ]
    report = check_constructive(s, w)
    _emit({
        "name": s.name,
        "rank": report.rank,
        "solutions": solutions,
        "independent_polynomial_count": report.independent_count,
        "rank_attained": report.rank_attained,
        "exceeds_window_count": sum(1 for r in harvest if r.outcome == "exceeds_window"),
        "resonant_collisions": collisions,
        "window": w,
    }, out)


@main.command()
@_input_arg
@click.option("--submatrix", default=None, metavar="I,J",
              help="row index pair (0-based) selecting the atomic subsystem")
@click.option("--branch", type=int, default=0, show_default=True)
@click.option("--window", type=int, default=8, show_default=True)
@_out_opt
def series(input_path, submatrix, branch, window, out):
    """Truncated fully supported series tables (or a branch listing)."""
    s = _load_system(input_path)
    _require_nonconfluent(s, False)
    if submatrix is None:
        listing = []
        for sub in submatrices(s):
            for br, k0 in enumerate(branch_base_points(sub)):
                from .series import branch_initial_exponent

                a0 = branch_initial_exponent(sub, k0)
                listing.append({
                    "subsystem": list(sub.indices), "branch": br,
                    "base_point": list(k0),
                    "initial_exponent": [format_rational(a0[0]), format_rational(a0[1])],
                })
        _emit({"name": s.name, "branches": listing}, out)
        return
    try:
        i, j = (int(x) for x in submatrix.split(","))
    except ValueError:
        _fail(2, f"--submatrix expects 'I,J', got {submatrix!r}")
    try:
        t = series_from_submatrix(s, (i, j), branch, window)
    except ResonantCollisionError as exc:
        _fail(3, f"resonant collision at {exc.point}")
    except ValueError as exc:
        _fail(2, str(exc))
    _emit({
        "name": s.name,
        "subsystem": [i, j],
        "branch": branch,
        "initial_exponent": [format_rational(t.alpha0[0]), format_rational(t.alpha0[1])],
        "window": window,
        "coefficients": [
            {"offset": [d1, d2], "value": format_rational(v)}
            for (d1, d2), v in sorted(t.coeffs.items())
        ],
    }, out)


@main.command()
@_input_arg
@click.option("--solution", "solution_path", required=True, type=click.Path(),
              help="JSON file with a term list or {'terms': [...]}")
@_out_opt
def verify(input_path, solution_path, out):
    """Check a candidate solution exactly; report residual terms if it fails."""
    s = _load_system(input_path)
    try:
        with open(solution_path) as fh:
            data = json.load(fh)
        terms = data["terms"] if isinstance(data, dict) else data
        f = PuiseuxPolynomial.from_json(terms)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        _fail(2, f"cannot parse solution file {solution_path}: {exc}")
    from .operators import apply_horn

    r1 = apply_horn(1, f, s)
    r2 = apply_horn(2, f, s)
    ok = r1.is_zero() and r2.is_zero()
    result = {"name": s.name, "is_solution": ok}
    if ok:
        result["is_persistent"] = validate_persistence(f, s)
    else:
        residuals = []
        for j, r in ((1, r1), (2, r2)):
            for (e1, e2), c in r.sorted_terms()[:5]:
                residuals.append({
                    "equation": j,
                    "exponent": [format_rational(e1), format_rational(e2)],
                    "coefficient": format_rational(c),
                })
        result["residuals"] = residuals
    _emit(result, out)


@main.command("suggest-params")
@_input_arg
@click.option("--bound", type=int, default=5, show_default=True)
@click.option("--window", type=int, default=16, show_default=True)
@_out_opt
def suggest_params(input_path, bound, window, out):
    """Search for parameters giving a full Puiseux polynomial basis."""
    s = _load_system(input_path)
    _require_nonconfluent(s, False)
    try:
        params = suggest_polynomial_parameters(s, search_bound=bound, window=window)
    except ValueError as exc:
        _fail(3, str(exc))
    if params is None:
        _emit({"name": s.name, "found": False,
               "diagnostic": "no candidate verified within the search bound"}, out)
        return
    _emit({"name": s.name, "found": True,
           "parameters": [format_rational(c) for c in params]}, out)


@main.command()
@_input_arg
@click.option("--what", type=click.Choice(["polygon", "supports"]), required=True)
@_window_opt
@click.option("--out", type=click.Path(), required=True, help="output SVG path")
def render(input_path, what, window, out):
    """Render the polygon or the solution supports as deterministic SVG."""
    s = _load_system(input_path)
    _require_nonconfluent(s, False)
    if what == "polygon":
        svg = polygon_svg(build_polygon(s))
    else:
        w = _resolve_window(s, window)
        persistent = persistent_solutions(s)
        harvest = harvest_polynomials(s, w)
        polys = list(persistent)
        seen = {q.normalized() for q in persistent}
        for r in harvest:
            if r.outcome == "finite" and r.polynomial.normalized() not in seen:
                seen.add(r.polynomial.normalized())
                polys.append(r.polynomial)
        svg = supports_svg(polys)
    with open(out, "w") as fh:
        fh.write(svg)


if __name__ == "__main__":
    main()
