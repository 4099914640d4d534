from fractions import Fraction

import pytest

from dcurrent import liealg as L
from dcurrent import pbw
from dcurrent.scalars import QPolynomial


@pytest.fixture(scope="module")
def sl3():
    return L.structure_constants(L.AlgebraSpec(3, "sl", (Fraction(1, 2), Fraction(-1)), 1))


@pytest.fixture(scope="module")
def gl3():
    return L.structure_constants(L.AlgebraSpec(3, "gl", (Fraction(1, 2), Fraction(-1)), 1))


def test_spec_validation():
    with pytest.raises(L.SpecError):
        L.AlgebraSpec(1)
    with pytest.raises(L.SpecError):
        L.AlgebraSpec(3, "so")
    with pytest.raises(L.SpecError):
        L.AlgebraSpec(3, "sl", (1,))
    assert L.AlgebraSpec(3).Q == (0, 0)


def test_basis_size():
    assert len(L.basis(L.AlgebraSpec(3, "sl", N=1))) == 2 * (6 + 2)
    assert len(L.basis(L.AlgebraSpec(3, "gl", N=1))) == 2 * (6 + 3)


def test_defining_relations(sl3, gl3):
    for table in (sl3, gl3):
        rep = L.check_relations(table)
        assert rep.ok, rep.failures
        assert L.check_antisymmetry(table) == []


def test_jacobi_sample(sl3):
    els = L.basis(sl3.spec, 0)
    triples = [(a, b, c) for a in els[:4] for b in els for c in els[-3:]]
    assert L.check_jacobi(sl3, triples=triples) == []


def test_eval_homomorphism(sl3):
    assert L.check_eval_homomorphism(sl3, gammas=(0, 3, Fraction(-1, 3)), N=0) == []


def test_known_bracket(sl3):
    # [X+_{1,0}, X-_{1,1}] = J_{1,1} - Q_1 J_{1,2}
    x = L.gen_element(sl3.spec, ("X+", 1, 0))
    y = L.gen_element(sl3.spec, ("X-", 1, 1))
    expect = L.LieElement({("J", 1, 1): 1, ("J", 1, 2): Fraction(-1, 2)})
    assert sl3.bracket(x, y) == expect


def test_rank_one_slice_matches_pbw(sl3):
    # along each simple root the brackets are those of the rank-1 algebra
    spec = sl3.spec
    kinds = {"X+": pbw.XPLUS, "X-": pbw.XMINUS, "J": pbw.JAY}
    for i in (1, 2):
        q = spec.q(i)
        for a in ("X+", "X-", "J"):
            for b in ("X+", "X-", "J"):
                for s in range(2):
                    for t in range(2):
                        got = sl3.bracket(L.gen_element(spec, (a, i, s)), L.gen_element(spec, (b, i, t)))
                        want = L.LieElement()
                        for g, c in pbw.bracket_gen(pbw.Generator(kinds[a], s), pbw.Generator(kinds[b], t)):
                            name = pbw.KIND_NAMES[g.kind]
                            want = want + L.gen_element(spec, (name, i, g.t)).scale(c.evaluate([q]))
                        assert got == want, (i, a, b, s, t)


def test_classical_limit():
    spec = L.AlgebraSpec(2, "gl", (0,), 1)
    table = L.structure_constants(spec)
    for a in L.basis(spec):
        for b in L.basis(spec):
            assert table.bracket_basis(a, b) == L.classical_bracket(spec, a, b)


def test_json_roundtrip_and_frozen(sl3):
    data = sl3.to_json()
    back = L.StructureTable.from_json(data)
    assert back.to_json() == data
    a, b = L.basis(sl3.spec)[0], L.basis(sl3.spec)[1]
    assert back.bracket_basis(a, b) == sl3.bracket_basis(a, b)
    with pytest.raises(L.DegreeOverflow):
        back.bracket_basis(("E", 1, 2, 5), ("E", 2, 1, 0))


def test_upsilon(sl3, gl3):
    hom_bad, injective = L.check_upsilon(sl3, gl3)
    assert hom_bad == [] and injective
    j = L.LieElement.basis(("J", 2, 1))
    assert L.upsilon(j) == L.LieElement({("I", 2, 1): 1, ("I", 3, 1): -1})


def test_phi_isomorphism():
    pd, rep = L.phi_isomorphism((2, 1), (Fraction(2),), N=1)
    assert rep.ok, rep.failures
    assert pd.Q == (0, Fraction(1, 2))
    with pytest.raises(L.SpecError):
        L.phi_data((2, 1), (0,))
