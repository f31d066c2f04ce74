"""Horn operators as explicit affine-factor lists, exact application to
Puiseux polynomials, solution checking, and the parameter-shift intertwiners.

The j-th equation is x_j * P_j(theta) f = Q_j(theta) f.  P_j collects one
factor <A_i, s> + c_i + l per row with A_{i,j} > 0 and l = 0..A_{i,j}-1;
Q_j the same for rows with A_{i,j} < 0 and l = 0..|A_{i,j}|-1.  Operators
stay factored; theta acts on x^alpha by the scalar alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import Vec2, dot
from .puiseux import PuiseuxPolynomial
from .system import HornSystem


@dataclass(frozen=True)
class AffineFactor:
    """The linear form <normal, s> + offset."""

    normal: Vec2
    offset: Fraction

    def eval(self, alpha) -> Fraction:
        return Fraction(dot(self.normal, alpha)) + self.offset


@dataclass(frozen=True)
class HornOperatorPair:
    p1: tuple[AffineFactor, ...]
    q1: tuple[AffineFactor, ...]
    p2: tuple[AffineFactor, ...]
    q2: tuple[AffineFactor, ...]

    def p(self, j: int) -> tuple[AffineFactor, ...]:
        return self.p1 if j == 1 else self.p2

    def q(self, j: int) -> tuple[AffineFactor, ...]:
        return self.q1 if j == 1 else self.q2


def build_operators(s: HornSystem) -> HornOperatorPair:
    """Factor lists in row order, then offset order; deterministic."""
    parts: dict[tuple[int, str], list[AffineFactor]] = {
        (1, "p"): [], (1, "q"): [], (2, "p"): [], (2, "q"): [],
    }
    for row, c in zip(s.rows, s.params):
        for j, entry in ((1, row.a), (2, row.b)):
            if entry == 0:
                continue
            side = "p" if entry > 0 else "q"
            for ell in range(abs(entry)):
                parts[(j, side)].append(AffineFactor(row, c + ell))
    return HornOperatorPair(
        tuple(parts[(1, "p")]), tuple(parts[(1, "q")]),
        tuple(parts[(2, "p")]), tuple(parts[(2, "q")]),
    )


def eval_factors(factors: tuple[AffineFactor, ...], alpha) -> Fraction:
    out = Fraction(1)
    for f in factors:
        out *= f.eval(alpha)
        if out == 0:
            return out
    return out


def apply_horn(j: int, f: PuiseuxPolynomial, s: HornSystem,
               ops: HornOperatorPair | None = None) -> PuiseuxPolynomial:
    """Residual x_j P_j(theta) f - Q_j(theta) f, exactly.

    A zero residual for both j means f solves the system; nonzero terms
    point at the offending support positions.
    """
    if j not in (1, 2):
        raise ValueError("j must be 1 or 2")
    ops = ops or build_operators(s)
    e_j = (Fraction(1), Fraction(0)) if j == 1 else (Fraction(0), Fraction(1))
    out: dict = {}
    for alpha, c in f.terms.items():
        pv = eval_factors(ops.p(j), alpha)
        if pv != 0:
            key = (alpha[0] + e_j[0], alpha[1] + e_j[1])
            out[key] = out.get(key, Fraction(0)) + c * pv
            if out[key] == 0:
                del out[key]
        qv = eval_factors(ops.q(j), alpha)
        if qv != 0:
            out[alpha] = out.get(alpha, Fraction(0)) - c * qv
            if out[alpha] == 0:
                del out[alpha]
    res = PuiseuxPolynomial.zero()
    res.terms = out
    return res


def is_solution(f: PuiseuxPolynomial, s: HornSystem,
                ops: HornOperatorPair | None = None) -> bool:
    if f.is_zero():
        raise ValueError("zero polynomial is trivially a solution; rejected")
    ops = ops or build_operators(s)
    return apply_horn(1, f, s, ops).is_zero() and apply_horn(2, f, s, ops).is_zero()


def apply_intertwiner(j: int, f: PuiseuxPolynomial, s: HornSystem) -> PuiseuxPolynomial:
    """Apply <A_j, theta> + c_j - 1 (parameters of s are the target ones).

    Maps solutions at c - e_j to solutions at c; on a monomial x^alpha it is
    the scalar <A_j, alpha> + c_j - 1.
    """
    if not 1 <= j <= s.m:
        raise ValueError(f"row index {j} out of range 1..{s.m}")
    row, c = s.rows[j - 1], s.params[j - 1]
    out: dict = {}
    for alpha, coeff in f.terms.items():
        scalar = Fraction(dot(row, alpha)) + c - 1
        if scalar != 0:
            out[alpha] = coeff * scalar
    res = PuiseuxPolynomial.zero()
    res.terms = out
    return res
