"""Closed-form counts for a nonconfluent system: holonomic rank, persistent
dimension, fully supported series count, and the per-vertex dimension of
convergent fully supported solutions, computed two independent ways.

Vertices of the polygon index the components of the singular amoeba's
complement; the count attached to a vertex is evaluated both through the
angular double sum over normals and through the recession-cone inclusion
test, and the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import RelAngle, Vec2, cross, index_nu
from .polygon import OreSatoPolygon, build_polygon
from .system import HornSystem, check_nonconfluent, normalize_rows


@dataclass(frozen=True)
class ConeQ:
    """A strongly convex 2D cone spanned by two independent generators,
    stored in counterclockwise order."""

    gen1: tuple[Fraction, Fraction]
    gen2: tuple[Fraction, Fraction]

    def __post_init__(self):
        d = self.gen1[0] * self.gen2[1] - self.gen1[1] * self.gen2[0]
        if d == 0:
            raise ValueError("cone generators must be linearly independent")
        if d < 0:
            g1, g2 = self.gen1, self.gen2
            object.__setattr__(self, "gen1", g2)
            object.__setattr__(self, "gen2", g1)

    def contains(self, v: tuple[Fraction, Fraction]) -> bool:
        """Membership via Cramer coordinates, exact."""
        g1, g2 = self.gen1, self.gen2
        det = g1[0] * g2[1] - g1[1] * g2[0]
        a = (v[0] * g2[1] - v[1] * g2[0]) / det
        b = (g1[0] * v[1] - g1[1] * v[0]) / det
        return a >= 0 and b >= 0

    def contains_cone(self, other: "ConeQ") -> bool:
        return self.contains(other.gen1) and self.contains(other.gen2)


@dataclass(frozen=True)
class ComponentRef:
    """A complement component named by its polygon vertex; the recession cone
    is spanned by the two outer normals adjacent to the vertex."""

    vertex_index: int
    normal_cone: ConeQ


def cone_from_vectors(u: Vec2, v: Vec2) -> ConeQ:
    if cross(u, v) > 0:
        return ConeQ((Fraction(u.a), Fraction(u.b)), (Fraction(v.a), Fraction(v.b)))
    return ConeQ((Fraction(v.a), Fraction(v.b)), (Fraction(u.a), Fraction(u.b)))


def component_ref(p: OreSatoPolygon, i: int) -> ComponentRef:
    """Vertex i sits between edges i-1 and i; its normal cone is spanned by
    those two outer normals."""
    q = len(p.edges)
    if not 0 <= i < q:
        raise ValueError(f"vertex index {i} out of range 0..{q - 1}")
    n_prev = p.edges[(i - 1) % q].normal
    n_next = p.edges[i].normal
    return ComponentRef(i, cone_from_vectors(n_prev, n_next))


# -- global counts ----------------------------------------------------------


def holonomic_rank(s: HornSystem) -> int:
    """(sum of positive first-column entries) * (sum of positive second-column
    entries) minus the indices of linearly dependent row pairs in opposite
    open quadrants.  Evaluated on the Gauss-normalized rows; the value agrees
    with the raw-matrix evaluation."""
    if not check_nonconfluent(s):
        raise ValueError("rank formula requires nonconfluency")
    return _rank_on_rows(normalize_rows(s).rows)


def _rank_on_rows(rows: tuple[Vec2, ...]) -> int:
    pos1 = sum(r.a for r in rows if r.a > 0)
    pos2 = sum(r.b for r in rows if r.b > 0)
    correction = 0
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if cross(rows[i], rows[j]) == 0:
                correction += index_nu(rows[i], rows[j])
    return pos1 * pos2 - correction


def holonomic_rank_raw(s: HornSystem) -> int:
    """The same formula on the rows as given, without normalization."""
    if not check_nonconfluent(s):
        raise ValueError("rank formula requires nonconfluency")
    return _rank_on_rows(s.rows)


def persistent_dim(s: HornSystem) -> int:
    """Sum of pair indices over linearly independent row pairs."""
    if not check_nonconfluent(s):
        raise ValueError("persistent dimension requires nonconfluency")
    rows = normalize_rows(s).rows
    total = 0
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if cross(rows[i], rows[j]) != 0:
                total += index_nu(rows[i], rows[j])
    return total


def fully_supported_count(s: HornSystem) -> int:
    """Sum of |det| over all unordered nondegenerate row pairs: the number of
    pure fully supported series solutions across all convergence domains.
    Also meaningful for a bare atomic pair, where it equals |det M|."""
    rows = s.rows
    total = 0
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            total += abs(cross(rows[i], rows[j]))
    return total


# -- per-vertex counts -------------------------------------------------------


def _grouped_normals(s: HornSystem) -> tuple[list[Vec2], list[int]]:
    """Distinct primitive normals in ccw polygon order with multiplicities."""
    p = build_polygon(s)
    return [e.normal for e in p.edges], [e.length for e in p.edges]


def convergent_count_S(s: HornSystem, i: int) -> int:
    """Angular double sum over normals for the vertex between edges i-1 and i.

    With B_t the distinct normals in ccw order and the angle branch based at
    the ray opposite B_{next}: sum det(B_k, B_l) * mult_k * mult_l over
    k with 0 < arg B_k <= arg B_prev and l with arg B_next <= arg B_l
    < arg(-B_k).  Every summand determinant is positive.
    """
    normals, mults = _grouped_normals(s)
    q = len(normals)
    if not 0 <= i < q:
        raise ValueError(f"vertex index {i} out of range 0..{q - 1}")
    b_prev = normals[(i - 1) % q]   # edge i-1 normal
    b_next = normals[i]             # edge i normal
    base = -b_next
    ang = {t: RelAngle(normals[t], base) for t in range(q)}
    neg_ang = {t: RelAngle(-normals[t], base) for t in range(q)}
    zero = RelAngle(base, base)
    top_k = RelAngle(b_prev, base)
    lo_l = RelAngle(b_next, base)

    total = 0
    for k in range(q):
        if not (zero < ang[k] <= top_k):
            continue
        for ell in range(q):
            if not (lo_l <= ang[ell] < neg_ang[k]):
                continue
            d = cross(normals[k], normals[ell])
            if d <= 0:
                raise AssertionError("summand determinant must be positive")
            total += mults[k] * mults[ell] * d
    return total


def convergent_dim_by_cone(s: HornSystem, comp: ComponentRef) -> int:
    """Sum |det| over row pairs whose spanned cone contains the component's
    recession cone; the independent oracle for convergent_count_S."""
    if not check_nonconfluent(s):
        raise ValueError("count requires nonconfluency")
    rows = normalize_rows(s).rows
    total = 0
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            d = cross(rows[i], rows[j])
            if d == 0:
                continue
            if cone_from_vectors(rows[i], rows[j]).contains_cone(comp.normal_cone):
                total += abs(d)
    return total
