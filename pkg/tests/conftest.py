from functools import lru_cache

import pytest
from flint import fmpq

from qcasimir import QContext, build_standard, trace_data
from qcasimir.words import WordModel

QS = (fmpq(7, 5), fmpq(2), fmpq(13, 7))


@lru_cache(maxsize=None)
def standard(N, q=fmpq(2)):
    R = build_standard(N, QContext(q))
    return R, trace_data(R)


@lru_cache(maxsize=None)
def words(N, kmax, q=fmpq(2)):
    R, T = standard(N, q)
    return WordModel(R, T, kmax)


@pytest.fixture(params=QS, ids=str)
def q(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
