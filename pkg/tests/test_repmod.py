import random
from fractions import Fraction
from math import comb

import pytest

from dcurrent import classify as C
from dcurrent import linalg
from dcurrent import repmod as R
from dcurrent.liealg import AlgebraSpec
from dcurrent.scalars import monic_from_roots


def sl2(q):
    return AlgebraSpec(2, "sl", (Fraction(q),), 3)


@pytest.mark.parametrize("m,l", [(2, 1), (3, 1), (3, 2), (4, 2), (5, 2)])
def test_fundamental_dimension(m, l):
    cm = R.fundamental_module(m, l)
    assert cm.dim == comb(m, l)
    # e_i, f_i, h_i satisfy the sl_2 relations
    for i in range(m - 1):
        h = linalg.commutator(cm.e[i], cm.f[i])
        assert h == linalg.add(cm.K[i], cm.K[i + 1], -1)


def test_evaluation_module_relations():
    spec = AlgebraSpec(3, "gl", (Fraction(1, 2), Fraction(2)), 3)
    M = R.evaluation_twist(R.fundamental_module(3, 1), Fraction(3), spec, 3)
    assert R.check_module_relations(M).ok
    assert R.check_weight_grading(M) == []


def test_radical_at_excluded_point():
    # Q = 1, gamma = 1: X+ acts by zero, so the natural module splits off a line
    spec = sl2(1)
    M = R.evaluation_twist(R.fundamental_module(2, 1), 1, spec, 3)
    rad = R.maximal_submodule(M)
    assert len(rad) == 1
    sub, quo = R.subquotient(M, rad)
    assert C.extract_datum(quo).beta == (1,)
    sub.v0 = [Fraction(1)]
    assert C.extract_datum(sub).beta == (-1,)


def test_generic_point_is_simple():
    M = R.evaluation_twist(R.fundamental_module(2, 1), 2, sl2(1), 3)
    assert R.is_simple(M)


def test_subquotient_rejects_unstable():
    M = R.evaluation_twist(R.fundamental_module(2, 1), 2, sl2(1), 2)
    bottom = [[Fraction(0), Fraction(1)]] if M.weights[1] < M.weights[0] else [[Fraction(1), Fraction(0)]]
    with pytest.raises(R.PreconditionError):
        R.subquotient(M, bottom)


def test_one_dim_checks():
    with pytest.raises(R.RecipeError):
        R.one_dim_sl(sl2(0), (Fraction(1),), 2)
    L = R.one_dim_sl(sl2(2), (Fraction(3),), 2)
    assert [L.mat(("J", 1, t))[0][0] for t in range(3)] == [3, Fraction(3, 2), Fraction(3, 4)]


def test_tensor_needs_matching_truncation():
    A = R.one_dim_sl(sl2(2), (Fraction(1),), 2)
    B = R.one_dim_sl(sl2(2), (Fraction(1),), 3)
    with pytest.raises(ValueError):
        R.tensor(A, B)


def test_recipe_stages():
    spec = sl2(Fraction(1, 2))
    r = R.ModuleRecipe(spec, (("fundamental", 1, Fraction(3)), ("fundamental", 1, Fraction(3)), ("one_dim_sl", (Fraction(1),))))
    st = R.build_stages(r)
    # equal evaluation points: v0 generates the symmetric square, already simple
    assert st.simple.info == {"ambient_dim": 4, "cyclic_dim": 3, "radical_dim": 0}
    # gamma = 2 is the excluded point 1/Q, where only the top line survives
    r2 = R.ModuleRecipe(spec, (("fundamental", 1, Fraction(2)), ("fundamental", 1, Fraction(2))))
    assert R.simple_from_recipe(r2).dim == 1
    assert R.is_simple(st.simple)
    assert R.ModuleRecipe.from_json(r.to_json()) == r


def test_closure_bound_enforced():
    spec = sl2(0)
    r = R.ModuleRecipe(spec, (("fundamental", 1, Fraction(1)), ("fundamental", 1, Fraction(2))))
    with pytest.raises(R.RecipeError):
        R.ambient_module(r, 1)
    M = R.tensor_all([R.evaluation_twist(R.fundamental_module(2, 1), g, spec, 1) for g in (1, 2)])
    with pytest.raises(R.PreconditionError):
        R.cyclic_submodule(M, M.v0)


def test_json_roundtrip():
    spec = AlgebraSpec(3, "gl", (Fraction(1, 3), Fraction(0)), 3)
    d = C.ClassificationDatum((monic_from_roots([2]), monic_from_roots([])), (1, 0), (1, 2, 3, 4))
    S = R.simple_from_recipe(C.recipe_from_datum(d, spec))
    back = R.WeightModule.from_json(S.to_json())
    assert back.to_json() == S.to_json()
    assert C.same_datum(C.extract_datum(back), C.extract_datum(S))


def test_restriction_to_sl():
    spec = AlgebraSpec(3, "gl", (Fraction(1, 2), Fraction(1)), 2)
    M = R.evaluation_twist(R.fundamental_module(3, 1), 5, spec, 2)
    res = R.restrict_to_sl(M)
    assert res.spec.variant == "sl"
    assert R.check_module_relations(res).ok


@pytest.mark.parametrize("seed", range(4))
def test_truncation_identity(seed):
    rng = random.Random(seed)
    q = rng.choice([0, Fraction(1, 2), 2, -1])
    spec = AlgebraSpec(2, "sl", (Fraction(q),), 3)
    roots = [Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 2))]
    beta = (Fraction(rng.choice([0, 1, -2])) if q else Fraction(0),)
    d = C.ClassificationDatum((monic_from_roots(roots),), beta)
    S = R.simple_from_recipe(C.recipe_from_datum(d, spec), T=10)
    u, v = R.highest_weight_of(S)
    n = R.lowering_depth(S, v)
    for s in range(2):
        for t in range(2):
            assert R.check_truncation_identity(S, v, n, s, t)
    with pytest.raises(R.PreconditionError):
        R.check_truncation_identity(S, v, n + 1, 0, 0)
