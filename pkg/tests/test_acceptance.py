"""The seven acceptance criteria; each test prints its one-line verdict."""
import pytest

from dcurrent import acceptance as A


@pytest.fixture(scope="module")
def results():
    return {}


def _report(res, log):
    line = res.line()
    print(line)
    log.append(line)
    assert res.passed, res.detail


def test_criterion_1(acceptance_log):
    _report(A.criterion_1(), acceptance_log)


def test_criterion_2(acceptance_log):
    _report(A.criterion_2(A.DEFAULT_SEED), acceptance_log)


def test_criterion_3(acceptance_log, results):
    results[3] = A.criterion_3()
    _report(results[3], acceptance_log)


def test_criterion_4(acceptance_log):
    _report(A.criterion_4(), acceptance_log)


def test_criterion_5(acceptance_log, results):
    results[5] = A.criterion_5(A.DEFAULT_SEED)
    _report(results[5], acceptance_log)


def test_criterion_6(acceptance_log):
    _report(A.criterion_6(A.DEFAULT_SEED), acceptance_log)


def test_criterion_7(acceptance_log, results):
    res = A.criterion_7(A.DEFAULT_SEED, results.get(3), results.get(5))
    _report(res, acceptance_log)
