import pytest
from flint import fmpq

from qcasimir import linalg
from qcasimir.casimir import CentralExpr
from qcasimir.qscalar import q_int

from conftest import standard, words


def test_dimensions():
    assert words(2, 4).dims == [1, 4, 10, 20, 35]
    assert words(3, 2).dims == [1, 9, 45]


@pytest.mark.parametrize("N,kmax", [(2, 3), (3, 2)])
def test_ideal_is_preserved(N, kmax):
    W = words(N, kmax)
    assert all(v == 0 for v in W.ideal_residual.values())


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_re_relation_on_words(k):
    assert words(2, 3).re_residual(k) == 0


@pytest.mark.parametrize("k", [1, 2, 3])
def test_first_trace_is_the_shift_of_trl(k):
    R, T = standard(2)
    W = words(2, 3)
    d = W.dims[k]
    unit = q_int(T.m)(R.q) / R.q ** T.m
    hat = W.rtrace(W.hat_l_block(k), 1, d, d)
    trl = W.central(CentralExpr("trL").projector(R), 1, k)
    assert hat == (linalg.identity(d) * unit - trl) / R.nu


def test_power_sum_chain_equals_trace_of_power():
    R, _ = standard(2)
    W = words(2, 3)
    p2 = CentralExpr("p", 2)
    for k in (1, 2):
        d = W.dims[k]
        L = W.l_block(k, 1)
        assert W.central(p2.projector(R), 2, k) == W.rtrace(L * L, 1, d, d)


def test_coefficient_operator_recovers_platform():
    from qcasimir.casimir import platform_action
    R, T = standard(2)
    W = words(2, 3)
    x = CentralExpr("e", 2)
    for k in (1, 2):
        Wx = W.central(x.projector(R), 2, k)
        Tk, nullity = W.coefficient_operator(Wx, k)
        assert Tk is not None
        assert W.intertwines(Tk, Wx, k) == 0
        assert W.intertwines(platform_action(x, k, R, T).mat, Wx, k) == 0
