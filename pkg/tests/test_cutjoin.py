import pytest
from flint import fmpq

from qcasimir import linalg
from qcasimir.cutjoin import (check_identity, commutator_report, derivative_relation,
                              leibniz_action, normal_form, normal_order, operator_of,
                              closed_form_tail, wdelta_spectrum)
from qcasimir.tensor import lift
from qcasimir.young import Partition

from conftest import standard, words


def test_truncated_relation_drops_only_the_constant():
    W = words(2, 2)
    rel = derivative_relation(W)
    assert rel.truncation_defect(W) == 0
    assert not linalg.is_zero(rel.constant)


@pytest.mark.parametrize("delta", [(2,), (1, 1), (3,)])
def test_tails_match_displays(delta):
    W = words(2, 3)
    op = normal_order(delta, W)
    assert op.reference_residual == 0
    assert op.matches_closed_form


def test_displayed_tails():
    R, _ = standard(2)
    assert closed_form_tail((2,), R) == lift(R, 1, 2, inverse=True)
    r = lift(R, 2, 3, inverse=True) * lift(R, 1, 3, inverse=True)
    assert closed_form_tail((3,), R) == r * r
    assert closed_form_tail((2, 1), R) is None


def test_tail_n3():
    W = words(3, 2)
    for delta in ((2,), (1, 1)):
        op = normal_order(delta, W)
        assert op.matches_closed_form and op.nullity == 36


def test_first_operator_has_identity_tail():
    op = normal_order((1,), words(2, 3))
    assert op.nullity == 0 and op.matches_closed_form


def test_unanchored_delta():
    op = normal_order((2, 1), words(2, 3))
    assert not op.anchored and op.tail is not None


@pytest.mark.parametrize("which", ["mor1", "mor2", "mor3"])
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_identities_n2(which, k):
    rep = check_identity(which, k, words(2, 3))
    assert rep.residual == 0 and rep.route_residual == 0
    assert rep.coefficient_residual in (None, 0)


@pytest.mark.parametrize("which", ["mor1", "mor2", "mor3"])
def test_identities_n3(which):
    for k in (1, 2):
        rep = check_identity(which, k, words(3, 2))
        assert rep.residual == 0 and rep.coefficient_residual == 0


def test_first_operator_spectrum():
    W = words(2, 3)
    assert wdelta_spectrum((1,), (1,), W).value == fmpq(1, 16)
    assert wdelta_spectrum((1,), (), W).value == 0
    assert wdelta_spectrum((1,), (1,), words(3, 2)).value == fmpq(1, 64)


def test_second_operator_spectrum():
    W = words(2, 3)
    assert wdelta_spectrum((2,), (2,), W).value == fmpq(5, 2048)
    assert wdelta_spectrum((2,), (1, 1), W).value == fmpq(-5, 128)
    for lam in ((3,), (2, 1)):
        assert wdelta_spectrum((3,), lam, W).ok


def test_leibniz_anchors():
    R, _ = standard(2)
    W = words(2, 2)
    unit = leibniz_action([("D", 1), ("N", R.matrix), ("M", 1)], 2, 0, W)
    assert unit.as_tensor(2).mat == linalg.identity(4)
    assert linalg.is_zero(leibniz_action([("D", 1)], 1, 0, W).mat)


def test_leibniz_is_linear():
    R, _ = standard(2)
    W = words(2, 2)
    a = leibniz_action([("D", 1), ("N", R.matrix), ("M", 1)], 2, 1, W).mat
    b = leibniz_action([("D", 1), ("N", R.inverse), ("M", 1)], 2, 1, W).mat
    s = leibniz_action([("D", 1), ("N", R.matrix * 3 + R.inverse), ("M", 1)], 2, 1, W).mat
    assert s == a * 3 + b


def test_normal_form_is_normal_ordered():
    poly = normal_form((2,), words(2, 2))
    for word in poly:
        kinds = [kind for kind, _ in word]
        assert kinds == sorted(kinds, key=lambda c: c != "m")


def test_commutators_are_measured():
    rows = commutator_report([(1,), (2,), (1, 1)], 2, words(2, 3))
    assert len(rows) == 3
    assert all(isinstance(v, type(fmpq(0))) for _, _, v in rows)
