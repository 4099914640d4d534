from fractions import Fraction

import pytest

from dcurrent import classify as C
from dcurrent import repmod as R
from dcurrent.liealg import AlgebraSpec
from dcurrent.scalars import MonicPolynomial, monic_from_roots

F = Fraction


def datum(roots_per_row, beta, h=None):
    return C.ClassificationDatum(tuple(monic_from_roots(r) for r in roots_per_row), tuple(beta), h)


def test_rank1_highest_weight_example():
    # roots 1, 2 at Q = 0: u = (2, 3, 5, 9)
    spec = AlgebraSpec(2, "sl", (0,), 3)
    d = datum([[1, 2]], [0])
    hw = C.hw_from_datum(d, spec, 3)
    assert hw.row(1) == [2, 3, 5, 9]
    S = R.simple_from_recipe(C.recipe_from_datum(d, spec))
    assert C.highest_weight_record(S).u == hw.u
    assert C.same_datum(C.extract_datum_rank1(S), d)


def test_beta_enters_every_degree():
    spec = AlgebraSpec(2, "sl", (F(1, 2),), 2)
    hw = C.hw_from_datum(datum([[3]], [F(1, 3)]), spec, 2)
    assert hw.row(1) == [1 + F(1, 3), 3 + F(2, 3), 9 + F(4, 3)]


def test_validate():
    Q = (F(1, 2),)
    assert C.validate(datum([[3]], [0]), Q) == []
    assert C.validate(datum([[2]], [0]), Q)  # 2 = 1/Q
    assert C.validate(datum([[2]], [0]), Q, roots=False) == []
    assert C.validate(datum([[]], [1]), (0,))
    assert C.validate(datum([[]], [0]), Q, "gl")
    assert C.validate(datum([[], []], [0, 0]), Q)
    with pytest.raises(C.InvalidDatum):
        C.hw_from_datum_sl(datum([[2]], [0]), Q, 2)


def test_canonicalize():
    Q = (F(1, 2), F(0))
    d = datum([[2, 2, 5], [2]], [F(1, 3), 0])
    c = C.canonicalize(d, Q)
    assert c.phi[0] == monic_from_roots([5])
    assert c.beta == (F(7, 3), 0)
    assert c.phi[1] == monic_from_roots([2])
    assert C.canonicalize(c, Q) == c


def test_noncanonical_recipe_gives_canonical_module():
    spec = AlgebraSpec(2, "sl", (F(1, 2),), 3)
    d = datum([[2, 1]], [0])
    S = R.simple_from_recipe(C.recipe_from_datum(d, spec))
    assert C.same_datum(C.extract_datum(S), C.canonicalize(d, spec.Q))


def test_gl_rows_and_differences():
    spec = AlgebraSpec(3, "gl", (F(1, 2), F(0)), 2)
    d = datum([[1], [3]], [F(2), 0], (F(1), F(-1), F(2)))
    hw = C.hw_from_datum(d, spec, 2)
    assert hw.row(3) == [1, -1, 2]
    sl = C.hw_from_datum(C.ClassificationDatum(d.phi, d.beta), spec.with_variant("sl"), 2)
    assert C.weight_difference_rows(hw) == sl.u
    with pytest.raises(C.InvalidDatum):
        C.hw_from_datum(d, spec, 3)  # h prefix too short


def test_gl_roundtrip_through_module():
    spec = AlgebraSpec(3, "gl", (F(1, 2), F(-1)), 2)
    d = datum([[1], []], [F(1), F(1, 2)], (F(2), F(0), F(1)))
    S = R.simple_from_recipe(C.recipe_from_datum(d, spec))
    assert C.same_datum(C.extract_datum_rankm(S), d.h_prefix(S.T))


def test_distinct_truncations():
    spec = AlgebraSpec(2, "sl", (F(1, 2),), 2)
    data = [datum([[1]], [0]), datum([[3]], [0]), datum([[]], [1]), datum([[1]], [0])]
    assert C.distinct_truncations(data, spec, 2) == []


def test_json_forms():
    d = datum([[F(1, 2), 3], []], [1, 0], (1, 2))
    assert C.ClassificationDatum.from_json(d.to_json()) == d
    bare = C.ClassificationDatum.from_json({"phi": [["1/2", "3"], []], "beta": ["1", "0"], "h": ["1", "2"]})
    assert C.same_datum(bare, d)


def test_irrational_row_rejected():
    # x^2 - 2 is a fine polynomial but does not split; no module recipe exists for it
    d = C.ClassificationDatum((MonicPolynomial((F(-2), F(0))),), (F(0),))
    with pytest.raises(Exception):
        C.recipe_from_datum(d, AlgebraSpec(2, "sl", (0,), 2))
