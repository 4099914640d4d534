import random
from fractions import Fraction

import pytest

from dcurrent import classify as C
from dcurrent import linalg
from dcurrent import oracles as O
from dcurrent import repmod as R
from dcurrent.liealg import AlgebraSpec
from dcurrent.scalars import monic_from_roots


def _recipe(spec, gammas):
    return R.ModuleRecipe(spec, tuple(("fundamental", l, Fraction(g)) for l, g in gammas))


CASES = [
    (AlgebraSpec(2, "sl", (Fraction(1, 2),), 3), [(1, 2), (1, 3), (1, 3)]),
    (AlgebraSpec(2, "sl", (0,), 3), [(1, 1), (1, 1), (1, -1)]),
    (AlgebraSpec(3, "sl", (Fraction(1), 0), 3), [(1, 1), (2, 1)]),
    (AlgebraSpec(3, "gl", (Fraction(1, 2), Fraction(1)), 3), [(1, 2), (2, 1), (1, 4)]),
]


@pytest.mark.parametrize("spec,gammas", CASES)
def test_radical_agrees_with_raising_words(spec, gammas):
    A = R.ambient_module(_recipe(spec, gammas))
    M = R.cyclic_submodule(A, A.v0)
    fast = R.maximal_submodule(M)
    slow = O.radical_by_raising_words(M)
    assert fast == slow
    assert O.is_invariant(M, fast)


def test_raising_word_count():
    M = R.evaluation_twist(R.fundamental_module(3, 1), 1, AlgebraSpec(3, "sl", (0, 0), 1), 1)
    words = list(O.raising_words(M, [1, 1]))
    # two orders, two degrees per letter
    assert len(words) == 8


def test_common_eigenspaces_of_split_module():
    spec = AlgebraSpec(2, "sl", (Fraction(1),), 2)
    M = R.evaluation_twist(R.fundamental_module(2, 1), 1, spec, 2)
    spaces = O.common_eigenspaces(M)
    assert len(spaces) == 1 and len(spaces[0]) == 1
    assert O.is_invariant(M, spaces[0])


def test_is_invariant_rejects():
    M = R.evaluation_twist(R.fundamental_module(2, 1), 3, AlgebraSpec(2, "sl", (0,), 1), 1)
    assert not O.is_invariant(M, [[Fraction(1), Fraction(0)]])
