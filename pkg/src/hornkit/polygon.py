"""The polygon attached to a nonconfluent system: outer normals are the
(primitivized) rows, side lattice lengths their multiplicities.  Includes the
zonotope / triangle-plus-segments classification and the matching Minkowski
decomposition that witnesses maximal reducibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .lattice import Vec2, ccw_sort, dot, rot90
from .system import HornSystem, check_nonconfluent, normalize_rows


@dataclass(frozen=True)
class Edge:
    direction: Vec2  # primitive, ccw traversal direction
    length: int      # lattice length >= 1
    normal: Vec2     # primitive outer normal (direction rotated by -90)

    def vector(self) -> Vec2:
        return self.direction.scale(self.length)


@dataclass(frozen=True)
class OreSatoPolygon:
    edges: tuple[Edge, ...]          # ccw by outer normal angle from the +x1 axis
    vertices: tuple[Vec2, ...]       # accumulated from (0,0), one per edge start

    def edge_count(self) -> int:
        return len(self.edges)


class Kind(Enum):
    ZONOTOPE = "Zonotope"
    TRIANGLE_PLUS_SEGMENTS = "TrianglePlusSegments"
    OTHER = "Other"


@dataclass(frozen=True)
class Segment:
    direction: Vec2
    length: int


@dataclass(frozen=True)
class Triangle:
    edges: tuple[Segment, Segment, Segment]  # oriented edge vectors, sum zero


@dataclass(frozen=True)
class Classification:
    kind: Kind
    segments: tuple[Segment, ...] = ()
    triangle: Triangle | None = None


def build_polygon(s: HornSystem) -> OreSatoPolygon:
    """Normalize rows to primitive, group equal normals into multiplicities,
    and lay the sides out counterclockwise starting from (0,0).

    Each outer normal (a, b) is traversed along (-b, a), which keeps the
    normal pointing outward for a ccw boundary walk.
    """
    if not check_nonconfluent(s):
        raise ValueError("polygon requires nonconfluency")
    if not s.rank2():
        raise ValueError("rows must span rank 2")
    norm = normalize_rows(s)
    mult: dict[Vec2, int] = {}
    for r in norm.rows:
        mult[r] = mult.get(r, 0) + 1
    normals = list(mult)
    order = ccw_sort(normals)
    edges = []
    for idx in order:
        n = normals[idx]
        edges.append(Edge(direction=rot90(n), length=mult[n], normal=n))
    vertices = []
    acc = Vec2(0, 0)
    for e in edges:
        vertices.append(acc)
        acc = acc + e.vector()
    if not acc.is_zero():
        raise AssertionError("polygon failed to close; nonconfluency violated")
    return OreSatoPolygon(tuple(edges), tuple(vertices))


def vertex_count(p: OreSatoPolygon) -> int:
    return len(p.edges)


def _canonical_line_direction(d: Vec2) -> Vec2:
    """Pick one orientation per unsigned direction line."""
    if d.a > 0 or (d.a == 0 and d.b > 0):
        return d
    return -d


def classify(p: OreSatoPolygon) -> Classification:
    """Zonotope iff every direction line is length-balanced; otherwise
    triangle-plus-segments iff there are exactly three direction lines
    (closure then forces the three excesses to be nonzero and to cancel);
    anything else cannot carry a maximally reducible monodromy.
    """
    lines: dict[Vec2, dict[int, int]] = {}
    for e in p.edges:
        key = _canonical_line_direction(e.direction)
        sign = 1 if key == e.direction else -1
        lines.setdefault(key, {1: 0, -1: 0})[sign] += e.length

    excesses: list[tuple[Vec2, int]] = []  # (canonical direction, signed excess)
    segments: list[Segment] = []
    for key, lens in lines.items():
        common = min(lens[1], lens[-1])
        if common > 0:
            segments.append(Segment(key, common))
        excesses.append((key, lens[1] - lens[-1]))
    segments.sort(key=lambda sgm: (sgm.direction.a, sgm.direction.b))

    if all(exc == 0 for _, exc in excesses):
        return Classification(Kind.ZONOTOPE, tuple(segments))

    if len(lines) != 3:
        return Classification(Kind.OTHER)
    tri_edges = []
    total = Vec2(0, 0)
    for key, exc in excesses:
        if exc == 0:
            return Classification(Kind.OTHER)
        d = key if exc > 0 else -key
        tri_edges.append(Segment(d, abs(exc)))
        total = total + d.scale(abs(exc))
    if not total.is_zero():  # cannot happen for a closed polygon; guard anyway
        return Classification(Kind.OTHER)
    tri_edges.sort(key=lambda sgm: (sgm.direction.a, sgm.direction.b))
    return Classification(
        Kind.TRIANGLE_PLUS_SEGMENTS, tuple(segments), Triangle(tuple(tri_edges))
    )


def minkowski_decompose(p: OreSatoPolygon) -> Classification:
    """Return the witness decomposition; its edge multiset re-sums to p's."""
    c = classify(p)
    if c.kind is Kind.OTHER:
        raise ValueError("no decomposition of the required shape")
    return c


def witness_edge_multiset(c: Classification) -> dict[Vec2, int]:
    """Edge multiset of the Minkowski sum of the witness summands."""
    out: dict[Vec2, int] = {}
    for seg in c.segments:
        for d in (seg.direction, -seg.direction):
            out[d] = out.get(d, 0) + seg.length
    if c.triangle is not None:
        for seg in c.triangle.edges:
            out[seg.direction] = out.get(seg.direction, 0) + seg.length
    return out


def polygon_edge_multiset(p: OreSatoPolygon) -> dict[Vec2, int]:
    return {e.direction: e.length for e in p.edges}


def is_centrally_symmetric(p: OreSatoPolygon) -> bool:
    """Direct symmetry test p == -p up to translation, as an independent
    cross-check of the zonotope branch."""
    ms = polygon_edge_multiset(p)
    return all(ms.get(-d, 0) == length for d, length in ms.items())


def is_maximally_reducible(s: HornSystem) -> bool:
    return classify(build_polygon(s)).kind is not Kind.OTHER


def outer_normal_holds(p: OreSatoPolygon) -> bool:
    """Every edge's normal attains its maximum over vertices on that edge."""
    for i, e in enumerate(p.edges):
        vals = [dot(e.normal, v) for v in p.vertices]
        edge_val = vals[i]
        if vals[(i + 1) % len(p.vertices)] != edge_val:
            return False
        if any(v > edge_val for v in vals):
            return False
    return True
