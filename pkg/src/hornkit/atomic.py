"""Atomic subsystems: nondegenerate 2x2 row pairs, their rank, the full
exponent lattice of their polynomial solutions, and the persistent solutions
themselves (monomials plus essentially polynomial completions).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import QVec, Vec2, cross, index_nu, opposite_open_quadrants
from .operators import build_operators, eval_factors, is_solution
from .puiseux import PuiseuxPolynomial
from .series import component_polynomial
from .system import HornSystem


@dataclass(frozen=True)
class AtomicSystem:
    indices: tuple[int, int]
    rows: tuple[Vec2, Vec2]
    params: tuple[Fraction, Fraction]

    def __post_init__(self):
        if cross(self.rows[0], self.rows[1]) == 0:
            raise ValueError("atomic system requires a nondegenerate row pair")

    @property
    def det(self) -> int:
        return cross(self.rows[0], self.rows[1])

    @property
    def nu(self) -> int:
        return index_nu(self.rows[0], self.rows[1])

    def system(self) -> HornSystem:
        return HornSystem(self.rows, self.params, name=f"atomic{self.indices}")

    def inverse_times(self, v) -> QVec:
        (a1, b1), (a2, b2) = self.rows
        det = Fraction(self.det)
        return (
            (b2 * Fraction(v[0]) - b1 * Fraction(v[1])) / det,
            (-a2 * Fraction(v[0]) + a1 * Fraction(v[1])) / det,
        )


@dataclass(frozen=True)
class FrameChange:
    """Monomial change of variables normalizing an atomic system: optional
    inversions x_j -> 1/x_j followed by an optional swap x_1 <-> x_2.

    A normalized-frame solution pulls back termwise: exponents through
    pull_back, coefficients unchanged.
    """

    flip1: bool
    flip2: bool
    swap: bool

    def pull_back(self, beta: QVec) -> QVec:
        b1, b2 = beta
        if self.swap:
            b1, b2 = b2, b1
        if self.flip1:
            b1 = -b1
        if self.flip2:
            b2 = -b2
        return (b1, b2)

    def push_row(self, r: Vec2) -> Vec2:
        a, b = r.a, r.b
        if self.flip1:
            a = -a
        if self.flip2:
            b = -b
        if self.swap:
            a, b = b, a
        return Vec2(a, b)

    def is_identity(self) -> bool:
        return not (self.flip1 or self.flip2 or self.swap)


def make_atomic(s: HornSystem, i: int, j: int) -> AtomicSystem:
    return AtomicSystem((i, j), (s.rows[i], s.rows[j]), (s.params[i], s.params[j]))


def enumerate_atomic(s: HornSystem) -> list[AtomicSystem]:
    """One atomic system per unordered nondegenerate row pair, index order."""
    out = []
    for i in range(s.m):
        for j in range(i + 1, s.m):
            if cross(s.rows[i], s.rows[j]) != 0:
                out.append(make_atomic(s, i, j))
    return out


def atomic_rank(a: AtomicSystem) -> int:
    """|det M| + nu(M): fully supported count plus persistent count."""
    return abs(a.det) + a.nu


def normalize_frame(a: AtomicSystem) -> tuple[AtomicSystem, FrameChange]:
    """Invert variables so the first row is strictly positive and the second
    strictly negative, then swap variables if needed to reach
    |a1*b2| > |a2*b1|.  Requires rows in opposite open quadrants.
    """
    u, v = a.rows
    if not opposite_open_quadrants(u, v):
        raise ValueError("normalization undefined: rows not in opposite open quadrants")
    flip1 = u.a < 0
    flip2 = u.b < 0
    fc = FrameChange(flip1, flip2, swap=False)
    u2, v2 = fc.push_row(u), fc.push_row(v)
    (a1, b1), (a2, b2) = u2, v2
    if abs(a1 * b2) < abs(a2 * b1):
        fc = FrameChange(flip1, flip2, swap=True)
        u2, v2 = fc.push_row(u), fc.push_row(v)
    out = AtomicSystem(a.indices, (u2, v2), a.params)
    if abs(out.rows[0].a * out.rows[1].b) <= abs(out.rows[0].b * out.rows[1].a):
        raise AssertionError("frame normalization failed to order the diagonal products")
    return out, fc


def _rectangle(a_norm: AtomicSystem) -> list[tuple[int, int]]:
    """R in the normalized frame: 0 <= u < b1, 0 <= v < |a2|."""
    (_a1, b1), (a2, _b2) = a_norm.rows
    return [(u, v) for u in range(b1) for v in range(-a2)]


def _small_rectangle(a_norm: AtomicSystem) -> set[tuple[int, int]]:
    """The monomial sub-rectangle: u < min(a1, b1), v < min(|a2|, |b2|)."""
    (a1, b1), (a2, b2) = a_norm.rows
    return {(u, v) for u in range(min(a1, b1)) for v in range(min(-a2, -b2))}


def _exponent_for(norm: AtomicSystem, fc: FrameChange, uv: tuple[int, int]) -> QVec:
    w = norm.inverse_times((uv[0] + norm.params[0], uv[1] + norm.params[1]))
    return fc.pull_back((-w[0], -w[1]))


def polynomial_exponents(a: AtomicSystem) -> set[QVec]:
    """Initial exponents of all Puiseux polynomial solutions:
    -M^{-1}((u, v) + c) over the index rectangle; exactly nu(M) of them."""
    if a.nu == 0:
        return set()
    norm, fc = normalize_frame(a)
    return {_exponent_for(norm, fc, uv) for uv in _rectangle(norm)}


def persistent_monomials(a: AtomicSystem) -> list[PuiseuxPolynomial]:
    """Monomial solutions: exponents over the sub-rectangle where a factor of
    both P's and both Q's vanishes simultaneously."""
    if a.nu == 0:
        return []
    norm, fc = normalize_frame(a)
    expts = sorted(_exponent_for(norm, fc, uv) for uv in sorted(_small_rectangle(norm)))
    return [PuiseuxPolynomial.monomial(e[0], e[1]) for e in expts]


def quotient_walk(a: AtomicSystem, alpha: QVec, case_i: int) -> PuiseuxPolynomial:
    """One-directional quotient walk from alpha: terms at alpha - j*e_i with
    coefficients Q_i(alpha)...Q_i(alpha-(j-1)e_i) /
    (P_i(alpha-e_i)...P_i(alpha-j e_i)), stopping at the first vanishing Q_i.

    The walk length is capped at ||b2|-|a2|| + 1; a vanishing P denominator
    before the stop raises.
    """
    ops = build_operators(a.system())
    (_a1, _b1), (a2, b2) = a.rows
    cap = abs(abs(b2) - abs(a2)) + 1
    e_i = (Fraction(1), Fraction(0)) if case_i == 1 else (Fraction(0), Fraction(1))

    terms = {alpha: Fraction(1)}
    coeff = Fraction(1)
    pt = alpha
    for _ in range(cap + 1):
        if eval_factors(ops.q(case_i), pt) == 0:
            return PuiseuxPolynomial(terms)
        nxt = (pt[0] - e_i[0], pt[1] - e_i[1])
        den = eval_factors(ops.p(case_i), nxt)
        if den == 0:
            raise ValueError(
                f"resonant collision: P_{case_i} vanishes at {nxt} before the stopping index"
            )
        coeff = coeff * eval_factors(ops.q(case_i), pt) / den
        terms[nxt] = coeff
        pt = nxt
    raise ValueError("walk exceeded its cap without reaching a vanishing factor")


def persistent_polynomials(a: AtomicSystem) -> list[PuiseuxPolynomial]:
    """Essentially polynomial solutions, one per initial exponent over the
    boundary strips of the index rectangle.

    Everything is computed in the normalized frame and pulled back termwise.
    The quotient walk supplies the backbone; when its truncation is not
    annihilated by the other operator (deeper strip positions couple back
    into the transverse direction), the full finite component through the
    initial exponent replaces it.  Every returned object is verified to be
    an exact solution of the original atomic system.
    """
    if a.nu == 0:
        return []
    norm, fc = normalize_frame(a)
    (a1, b1), (a2, b2) = norm.rows
    small = _small_rectangle(norm)
    norm_sys = norm.system()
    norm_ops = build_operators(norm_sys)
    orig_sys = a.system()
    radius = 4 * (abs(a1) + abs(b1) + abs(a2) + abs(b2)) + 8

    out: list[tuple[QVec, PuiseuxPolynomial]] = []
    for uv in sorted(set(_rectangle(norm)) - small):
        u, v = uv
        case_i = 2 if v >= min(-a2, -b2) else 1
        w = norm.inverse_times((u + norm.params[0], v + norm.params[1]))
        alpha_n = (-w[0], -w[1])
        try:
            cand = quotient_walk(norm, alpha_n, case_i)
        except ValueError:
            cand = None
        if cand is None or not is_solution(cand, norm_sys, norm_ops):
            full = component_polynomial(norm_sys, alpha_n, radius)
            if full is None:
                raise ValueError(f"no finite solution through initial exponent {alpha_n}")
            if cand is not None:
                for e, cf in cand.terms.items():
                    if full.terms.get(e) != cf:
                        raise AssertionError(
                            "completion disagrees with the quotient walk on its backbone"
                        )
            cand = full
        pulled = PuiseuxPolynomial({fc.pull_back(e): c for e, c in cand.terms.items()})
        if not is_solution(pulled, orig_sys):
            raise AssertionError("pulled-back candidate fails the original operators")
        alpha = fc.pull_back(alpha_n)
        out.append((alpha, pulled))

    out.sort(key=lambda t: t[0])
    return [p for _, p in out]
