import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from dcurrent import kernels
from dcurrent.pbw import JAY, XMINUS, XPLUS, Engine, UEAElement

PURE = kernels.load(False)
COMPILED = kernels.load(True)


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")


small = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))


@settings(max_examples=60)
@given(st.integers(1, 6), st.integers(1, 7), st.data())
def test_rref_agrees(r, c, data):
    rows = [[data.draw(small) for _ in range(c)] for _ in range(r)]
    assert COMPILED.rref([list(x) for x in rows], c) == PURE.rref([list(x) for x in rows], c)


@settings(max_examples=40)
@given(st.integers(1, 5), st.data())
def test_matmul_agrees(n, data):
    a = [[data.draw(small) for _ in range(n)] for _ in range(n)]
    b = [[data.draw(small) for _ in range(n)] for _ in range(n)]
    assert COMPILED.matmul(a, b) == PURE.matmul(a, b)


def test_rref_is_reduced():
    rng = random.Random(4)
    rows = [[Fraction(rng.randint(-3, 3)) for _ in range(5)] for _ in range(4)]
    red, piv = PURE.rref(rows, 5)
    for i, p in enumerate(piv):
        assert red[i][p] == 1
        assert all(red[j][p] == 0 for j in range(len(red)) if j != i)


def test_term_kernels_agree():
    eng = Engine()
    x = UEAElement.gen(XPLUS, 0, eng) + UEAElement.gen(XMINUS, 1, eng) + UEAElement.gen(JAY, 0, eng)
    terms = (x ** 3).terms
    rule = lambda mono: eng.rule(mono, XMINUS, 2)
    assert COMPILED.mul_terms(terms, rule) == PURE.mul_terms(terms, rule)
    a, b = dict(terms), dict(terms)
    assert COMPILED.add_scaled(a, terms, -3, 1) == PURE.add_scaled(b, terms, -3, 1)
