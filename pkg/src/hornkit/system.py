"""The Horn system data model: an integer matrix of row vectors plus a
rational parameter per row, with row normalization and resonance detection.

A system is the data (A, c) of the coefficient prod_i Gamma(<A_i, s> + c_i);
rows generate the operators, the polygon, and every count downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .lattice import Vec2, cross, primitive
from .puiseux import parse_rational


@dataclass(frozen=True)
class HornSystem:
    rows: tuple[Vec2, ...]
    params: tuple[Fraction, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.rows) != len(self.params):
            raise ValueError("rows and parameters must have equal length")
        if len(self.rows) < 2:
            raise ValueError("a Horn system needs at least two rows")

    @staticmethod
    def make(rows: Sequence[Sequence[int]], params: Sequence, name: str = "") -> "HornSystem":
        vrows = tuple(Vec2(int(r[0]), int(r[1])) for r in rows)
        vparams = tuple(parse_rational(p) for p in params)
        return HornSystem(vrows, vparams, name)

    @property
    def m(self) -> int:
        return len(self.rows)

    def rank2(self) -> bool:
        first = self.rows[0]
        return any(cross(first, r) != 0 for r in self.rows[1:])

    def with_params(self, params: Sequence) -> "HornSystem":
        return HornSystem(self.rows, tuple(parse_rational(p) for p in params), self.name)

    def to_json(self) -> dict:
        from .puiseux import format_rational

        return {
            "name": self.name,
            "matrix": [[r.a, r.b] for r in self.rows],
            "parameters": [format_rational(c) for c in self.params],
        }

    @staticmethod
    def from_json(data: dict) -> "HornSystem":
        return HornSystem.make(data["matrix"], data["parameters"], data.get("name", ""))


def check_nonconfluent(s: HornSystem) -> bool:
    """True iff the rows sum to the zero vector."""
    sa = sum(r.a for r in s.rows)
    sb = sum(r.b for r in s.rows)
    return sa == 0 and sb == 0


def normalize_rows(s: HornSystem) -> HornSystem:
    """Split every row N*d (d primitive, N > 1) with parameter c into N rows d
    with parameters (c + k)/N, k = 0..N-1; primitive rows pass through.

    This is the Gauss-multiplication normalization; it preserves
    nonconfluency and all the combinatorial counts.
    """
    rows: list[Vec2] = []
    params: list[Fraction] = []
    for r, c in zip(s.rows, s.params):
        d, g = primitive(r)  # raises on a zero row
        if g == 1:
            rows.append(r)
            params.append(c)
        else:
            for k in range(g):
                rows.append(d)
                params.append(Fraction(c + k, g))
    return HornSystem(tuple(rows), tuple(params), s.name)


@dataclass(frozen=True)
class Circuit:
    """A minimal linearly dependent set of rows with its coprime relation."""

    indices: tuple[int, ...]
    relation: tuple[int, ...]
    resonant: bool


@dataclass(frozen=True)
class ResonanceReport:
    circuits: tuple[Circuit, ...]
    is_resonant: bool
    is_maximally_resonant: bool


def _coprime(coeffs: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for a in coeffs:
        g = gcd(g, abs(a))
    if g == 0:
        raise ValueError("zero relation")
    out = tuple(a // g for a in coeffs)
    for a in out:  # sign-normalize: first nonzero positive
        if a != 0:
            return out if a > 0 else tuple(-x for x in out)
    raise ValueError("zero relation")


def detect_resonance(s: HornSystem) -> ResonanceReport:
    """Enumerate circuits (dependent pairs and pairwise-independent triples)
    and flag each whose relation pairs to an integer against the parameters.
    """
    rows, params = s.rows, s.params
    m = len(rows)
    circuits: list[Circuit] = []

    for i in range(m):
        for j in range(i + 1, m):
            u, v = rows[i], rows[j]
            if cross(u, v) != 0:
                continue
            # lambda1*u + lambda2*v = 0 from cross-multiplication
            lam = (v.a, -u.a) if (u.a, v.a) != (0, 0) else (v.b, -u.b)
            lam = _coprime(lam)
            value = lam[0] * params[i] + lam[1] * params[j]
            circuits.append(Circuit((i, j), lam, value.denominator == 1))

    for i in range(m):
        for j in range(i + 1, m):
            if cross(rows[i], rows[j]) == 0:
                continue
            for k in range(j + 1, m):
                if cross(rows[i], rows[k]) == 0 or cross(rows[j], rows[k]) == 0:
                    continue
                lam = _coprime(
                    (cross(rows[j], rows[k]), cross(rows[k], rows[i]), cross(rows[i], rows[j]))
                )
                value = lam[0] * params[i] + lam[1] * params[j] + lam[2] * params[k]
                circuits.append(Circuit((i, j, k), lam, value.denominator == 1))

    any_res = any(c.resonant for c in circuits)
    all_res = bool(circuits) and all(c.resonant for c in circuits)
    return ResonanceReport(tuple(circuits), any_res, all_res)


def is_generic(s: HornSystem) -> bool:
    """Effective surrogate for 'generic parameters': no resonant circuit and
    no collision among atomic initial exponents of distinct subsystems."""
    if detect_resonance(s).is_resonant:
        return False
    from .atomic import enumerate_atomic, polynomial_exponents

    seen = {}
    for a in enumerate_atomic(s):
        for e in polynomial_exponents(a):
            if e in seen and seen[e] != a.indices:
                return False
            seen[e] = a.indices
    return True
