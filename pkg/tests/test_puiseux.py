from fractions import Fraction as F

import pytest

from hornkit.puiseux import PuiseuxPolynomial, format_rational, parse_rational


def test_zero_coefficients_dropped():
    p = PuiseuxPolynomial({(F(1), F(0)): F(2)}) + PuiseuxPolynomial({(F(1), F(0)): F(-2)})
    assert p.is_zero()


def test_arithmetic():
    p = PuiseuxPolynomial.monomial(1, 0) + PuiseuxPolynomial.monomial(0, 1)
    q = p * p
    assert q.terms == {(F(2), F(0)): F(1), (F(1), F(1)): F(2), (F(0), F(2)): F(1)}
    assert (p ** 3).terms[(F(2), F(1))] == 3


def test_shift_and_normalize():
    p = PuiseuxPolynomial({(F(0), F(0)): F(3), (F(1), F(1)): F(6)})
    assert p.shift(F(1, 2), -1).terms == {(F(1, 2), F(-1)): F(3), (F(3, 2), F(0)): F(6)}
    n = p.normalized()
    assert n.terms[(F(0), F(0))] == 1
    assert n.terms[(F(1), F(1))] == 2


def test_purity():
    pure = PuiseuxPolynomial({(F(1, 2), F(0)): 1, (F(3, 2), F(2)): 5})
    assert pure.is_pure() == (True, None)
    impure = PuiseuxPolynomial({(F(1, 2), F(0)): 1, (F(1, 3), F(0)): 1})
    ok, witness = impure.is_pure()
    assert not ok and witness is not None


def test_json_round_trip():
    p = PuiseuxPolynomial({(F(-7, 5), F(2)): F(19, 3), (F(0), F(0)): -4})
    assert PuiseuxPolynomial.from_json(p.to_json()) == p
    # canonical term order: lex by exponent
    expts = [t["exponent"] for t in p.to_json()]
    assert expts == sorted(expts, key=lambda e: (parse_rational(e[0]), parse_rational(e[1])))


def test_parse_rational():
    assert parse_rational("-3/6") == F(-1, 2)
    assert parse_rational(7) == 7
    assert parse_rational(" 4 ") == 4
    with pytest.raises(ValueError):
        parse_rational("1.5")
    assert format_rational(F(4, 2)) == "2"
    assert format_rational(F(-1, 3)) == "-1/3"
