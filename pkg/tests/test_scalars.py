from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dcurrent.scalars import (
    ArityError,
    MonicPolynomial,
    NotFullyFactorable,
    QPolynomial,
    as_rational,
    format_rational,
    monic_from_roots,
    parse_rational,
    rational_arith,
    rational_roots,
)

rats = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))


def test_rational_arith_basics():
    with pytest.raises(ValueError):
        rational_arith(1, 2, "pow")
    assert rational_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)
    assert rational_arith(2, 3, "div") == Fraction(2, 3)
    with pytest.raises(ZeroDivisionError):
        rational_arith(1, 0, "div")


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_format_and_parse():
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(2) == "2/1"
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("5") == 5


@given(rats)
def test_format_parse_roundtrip(x):
    assert parse_rational(format_rational(x)) == x


def test_qpoly_product():
    Q = QPolynomial.var(0, 1)
    p = (Q + 1) * (Q - 1)
    assert p == Q * Q - 1
    assert p.degree() == 2
    assert p.evaluate([Fraction(3)]) == 8


def test_qpoly_arity_mismatch():
    with pytest.raises(ArityError):
        QPolynomial.var(0, 1) + QPolynomial.var(0, 2)


@given(rats, rats, rats)
def test_qpoly_distributive(a, b, c):
    Q = QPolynomial.var(0, 1)
    x, y, z = Q * a + 1, Q * Q * b - Q, QPolynomial.constant(c, 1) + Q
    assert x * (y + z) == x * y + x * z


def test_qpoly_json_roundtrip():
    Q = QPolynomial.var(0, 1)
    p = Q * Q * Fraction(-2, 3) + 5
    assert QPolynomial.from_json(p.to_json(), 1) == p


def test_monic_from_roots_and_str():
    p = monic_from_roots([1, 2])
    assert str(p) == "x^2 - 3*x + 2"
    assert p.coefficients == (2, -3)
    assert p.evaluate(1) == 0


def test_rational_roots_repeated():
    p = MonicPolynomial((Fraction(-1), Fraction(-1), Fraction(1)))  # (x-1)(x+1)^2
    assert sorted(rational_roots(p)) == [-1, -1, 1]


def test_not_fully_factorable():
    p = MonicPolynomial((Fraction(-2), Fraction(0)))  # x^2 - 2
    with pytest.raises(NotFullyFactorable) as err:
        rational_roots(p)
    assert err.value.remainder_degree == 2


@given(st.lists(rats, max_size=4))
def test_roots_roundtrip(roots):
    p = monic_from_roots(roots)
    bare = MonicPolynomial(p.coefficients)
    assert rational_roots(bare) == sorted(roots)


def test_bad_roots_rejected():
    with pytest.raises(ValueError):
        MonicPolynomial((Fraction(2), Fraction(-3)), (Fraction(1), Fraction(3)))


def test_monic_json_forms():
    p = monic_from_roots([Fraction(1, 2), 3])
    assert MonicPolynomial.from_json(p.to_json()) == p
    assert MonicPolynomial.from_json({"roots": ["1/2", "3"]}) == p
