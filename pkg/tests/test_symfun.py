from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dcurrent.scalars import monic_from_roots
from dcurrent.symfun import (
    MissingWeights,
    SymInstance,
    binomial_convolution_holds,
    check_generating_identity,
    check_newton_identity,
    check_tail_identity,
    check_weighted_tail_identity,
    elementary,
    newton_e_from_p,
    power_sum,
    solve_power_sum_system,
    weighted_elementary,
    weighted_power_sum,
)

rat = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 8))
points = st.lists(rat, min_size=1, max_size=5)


def test_small_values():
    inst = SymInstance((Fraction(1), Fraction(2), Fraction(3)))
    assert power_sum(inst, 2) == 14
    assert elementary(inst, 0) == 1
    assert elementary(inst, 2) == 11
    assert elementary(inst, 4) == 0


def test_weighted_needs_weights():
    with pytest.raises(MissingWeights):
        weighted_power_sum(SymInstance((Fraction(1),)), 1)


def test_weighted_values():
    inst = SymInstance((Fraction(2), Fraction(3)), (Fraction(1), Fraction(-1)))
    assert weighted_power_sum(inst, 2) == 4 - 9
    # e^(b)_1 = sum b_j x_j
    assert weighted_elementary(inst, 1) == 2 - 3


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_identities_symbolic(n):
    inst = SymInstance.symbolic(n, weighted=True)
    for k in range(1, n + 2):
        assert check_newton_identity(inst, k)
    assert check_tail_identity(inst, n + 1)
    assert check_tail_identity(inst, n + 3)
    assert check_weighted_tail_identity(inst)
    assert check_generating_identity(inst)


def test_tail_identity_range():
    with pytest.raises(ValueError):
        check_tail_identity(SymInstance((Fraction(1), Fraction(2))), 2)


@given(points)
def test_newton_numeric(pts):
    inst = SymInstance(pts)
    ps = [power_sum(inst, k) for k in range(1, len(pts) + 1)]
    assert newton_e_from_p(ps) == [elementary(inst, k) for k in range(1, len(pts) + 1)]


@settings(max_examples=50)
@given(points)
def test_solve_power_sums_roundtrip(pts):
    inst = SymInstance(pts)
    sol = solve_power_sum_system([power_sum(inst, k) for k in range(1, len(pts) + 1)])
    assert sol.roots == tuple(sorted(pts))
    assert sol.polynomial == monic_from_roots(pts)


def test_solve_power_sums_irrational():
    # p1 = 0, p2 = 4 gives x^2 - 2
    sol = solve_power_sum_system([0, 4])
    assert sol.roots is None
    assert sol.remainder_degree == 2


@given(st.integers(0, 12), st.data())
def test_binomial_convolution(zp, data):
    k = data.draw(st.integers(0, zp))
    wp = data.draw(st.integers(0, zp))
    assert binomial_convolution_holds(zp, k, wp)
