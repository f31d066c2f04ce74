"""Puiseux polynomials: finite maps from rational exponent pairs to rational
coefficients, with exact arithmetic and a canonical serialized form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .lattice import QVec, qvec

Expt = QVec  # (Fraction, Fraction) exponent pair


class PuiseuxPolynomial:
    """Finite linear combination of monomials x1^e1 * x2^e2 with rational
    exponents and coefficients.  Zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Expt, Fraction] | Iterable[tuple[Expt, Fraction]] = ()):
        clean: dict[Expt, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            c = Fraction(c)
            if c == 0:
                continue
            key = qvec(e[0], e[1])
            clean[key] = clean.get(key, Fraction(0)) + c
            if clean[key] == 0:
                del clean[key]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "PuiseuxPolynomial":
        return PuiseuxPolynomial()

    @staticmethod
    def monomial(e1, e2, coeff=1) -> "PuiseuxPolynomial":
        return PuiseuxPolynomial({qvec(e1, e2): Fraction(coeff)})

    @staticmethod
    def one() -> "PuiseuxPolynomial":
        return PuiseuxPolynomial.monomial(0, 0)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "PuiseuxPolynomial") -> "PuiseuxPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
            if out[e] == 0:
                del out[e]
        p = PuiseuxPolynomial.zero()
        p.terms = out
        return p

    def __sub__(self, other: "PuiseuxPolynomial") -> "PuiseuxPolynomial":
        return self + other.scale(-1)

    def scale(self, k) -> "PuiseuxPolynomial":
        k = Fraction(k)
        if k == 0:
            return PuiseuxPolynomial.zero()
        p = PuiseuxPolynomial.zero()
        p.terms = {e: c * k for e, c in self.terms.items()}
        return p

    def shift(self, e1, e2) -> "PuiseuxPolynomial":
        """Multiply by the monomial x1^e1 * x2^e2."""
        d1, d2 = Fraction(e1), Fraction(e2)
        p = PuiseuxPolynomial.zero()
        p.terms = {(e[0] + d1, e[1] + d2): c for e, c in self.terms.items()}
        return p

    def __mul__(self, other: "PuiseuxPolynomial") -> "PuiseuxPolynomial":
        out: dict[Expt, Fraction] = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                key = (e[0] + f[0], e[1] + f[1])
                out[key] = out.get(key, Fraction(0)) + c * d
                if out[key] == 0:
                    del out[key]
        p = PuiseuxPolynomial.zero()
        p.terms = out
        return p

    def __pow__(self, n: int) -> "PuiseuxPolynomial":
        if n < 0:
            raise ValueError("negative power of a Puiseux polynomial")
        result = PuiseuxPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> set[Expt]:
        return set(self.terms)

    def sorted_terms(self) -> list[tuple[Expt, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: t[0])

    def leading_exponent(self) -> Expt:
        """Lex-smallest exponent; the canonical anchor for normalization."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading exponent")
        return min(self.terms)

    def normalized(self) -> "PuiseuxPolynomial":
        """Scale so the coefficient at the lex-smallest exponent is 1."""
        if not self.terms:
            return self
        return self.scale(1 / self.terms[self.leading_exponent()])

    def is_pure(self) -> tuple[bool, tuple[Expt, Expt] | None]:
        """A polynomial is pure when all exponents agree mod Z^2.

        Returns (True, None) or (False, (e, f)) with a witnessing pair.
        """
        it = iter(self.terms)
        try:
            first = next(it)
        except StopIteration:
            return True, None
        for e in it:
            if (e[0] - first[0]).denominator != 1 or (e[1] - first[1]).denominator != 1:
                return False, (first, e)
        return True, None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PuiseuxPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (e1, e2), c in self.sorted_terms():
            bits.append(f"{c}*x1^{e1}*x2^{e2}")
        return " + ".join(bits)

    # -- wire format -------------------------------------------------------

    def to_json(self) -> list[dict]:
        """Term list sorted lex by exponent, rationals as 'p/q' strings."""
        return [
            {"exponent": [_frac_str(e1), _frac_str(e2)], "coefficient": _frac_str(c)}
            for (e1, e2), c in self.sorted_terms()
        ]

    @staticmethod
    def from_json(data: Iterable[Mapping]) -> "PuiseuxPolynomial":
        terms = {}
        for item in data:
            e1, e2 = (parse_rational(x) for x in item["exponent"])
            terms[(e1, e2)] = parse_rational(item["coefficient"])
        return PuiseuxPolynomial(terms)


def _frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text) -> Fraction:
    """Parse 'p/q' or bare integers (str or int); decimal forms are rejected."""
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if isinstance(text, str):
        s = text.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    raise ValueError(f"not a rational: {text!r}")


def format_rational(q) -> str:
    return _frac_str(Fraction(q))
