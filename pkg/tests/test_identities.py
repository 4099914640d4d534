import pytest

from dcurrent import identities as I
from dcurrent.pbw import Engine

SMALL = I.GridConfig(st_max=1, bc_max=3, part_max=3, p_max=3, z_max=5)


@pytest.fixture(scope="module")
def engine():
    return Engine()


@pytest.mark.parametrize("name", sorted(I.IDENTITIES))
def test_family_holds(name, engine):
    cases = [p for n, p in I.grid(SMALL) if n == name]
    assert cases, name
    bad = [p for p in cases if not I.verify_identity(name, p, engine).holds]
    assert bad == []


def test_grid_filter():
    cfg = I.GridConfig(st_max=0, bc_max=1, part_max=1, p_max=1, names=("comm_rel",))
    assert {n for n, _ in I.grid(cfg)} == {"comm_rel"}


def test_jay_power_low_orders(engine):
    for s in range(3):
        assert I.jay_power(s, 0, engine) == I._one(engine)
        assert I.jay_power(s, 1, engine) == I.jay_block(1, s, engine)
        lhs, rhs = I.id_jay_power_2(s, engine)
        assert lhs == rhs


def test_closed_form_third_power_mismatch(engine):
    # this closed form for J^<3> is not what the recursion gives; pinned so a
    # change in either is noticed
    for s in range(3):
        lhs, rhs = I.closed_form_jay_power_3(s, engine)
        assert lhs != rhs


def test_mismatch_detected(engine):
    # a wrong right-hand side must be reported with its difference
    lhs, rhs = I.id_jay_power_2(1, engine)
    assert not (lhs - rhs.scale(2)).is_zero()
    assert not (lhs - I.jay_power(2, 2, engine)).is_zero()


def test_partitions():
    assert sorted(I.partitions(4)) == sorted([(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)])
    assert list(I.partitions(0)) == [()]


def test_run_suite_counts(engine):
    cfg = I.GridConfig(st_max=0, bc_max=1, part_max=1, p_max=1, z_max=2)
    res = I.run_suite(cfg, engine)
    assert sum(len(v) for v in res.values()) == len(I.grid(cfg))
    assert all(r.holds for v in res.values() for r in v)
