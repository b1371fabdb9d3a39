import numpy as np
import pytest
from flint import fmpq, fmpq_mat
from hypothesis import given, settings, strategies as st

from qcasimir import linalg
from qcasimir.tensor import (LocalProgram, SizeCapError, TensorOp, check_cap, copy_over,
                             copy_under, jm_family, lift, lift_op, rtrace, to_array, to_matrix)

from conftest import standard

entries = st.builds(fmpq, st.integers(-9, 9), st.integers(1, 5))


def op_on(N, k, values):
    return TensorOp(N, k, fmpq_mat(N ** k, N ** k, values))


def mats(N, k):
    return st.lists(entries, min_size=N ** (2 * k), max_size=N ** (2 * k)).map(lambda v: op_on(N, k, v))


def test_lift_embeds():
    R, _ = standard(2)
    assert lift(R, 1, 2).mat == R.matrix
    r1, r2 = lift(R, 1, 3), lift(R, 2, 3)
    assert r1 * r2 * r1 == r2 * r1 * r2
    assert lift_op(linalg.identity(2), 2, 2, 1, 3) == TensorOp.identity(2, 3)
    with pytest.raises(IndexError):
        lift(R, 3, 3)


@settings(max_examples=20, deadline=None)
@given(mats(2, 1))
def test_copies_invert(X):
    R, _ = standard(2)
    X3 = X.extend(2)
    for i in (1, 2, 3):
        ov = copy_over(X3, R, i)
        back = ov
        for j in range(i - 1, 0, -1):
            back = lift(R, j, 3, inverse=True) * back * lift(R, j, 3)
        assert back == X3
    assert copy_over(X3, R, 1) == copy_under(X3, R, 1) == X3


def test_diagonal_copies_stay_diagonal():
    from qcasimir.qscalar import QContext
    from qcasimir.rmatrix import HeckeSymmetry
    diag = fmpq_mat(4, 4)
    for i in range(4):
        diag[i, i] = fmpq(i + 1)
    R = HeckeSymmetry(2, diag, QContext(fmpq(2)))
    X = op_on(2, 1, [1, 0, 0, 3]).extend(1)
    ov = copy_over(X, R, 2).mat
    assert all(ov[i, j] == 0 for i in range(4) for j in range(4) if i != j)


def test_rtrace_normalizations(q):
    from conftest import standard as st_
    R, T = st_(2, q)
    one = TensorOp.identity(2, 1)
    assert rtrace(one, 1, T).mat[0, 0] == (q + 1 / q) / q ** 2
    assert rtrace(lift(R, 1, 2), 2, T) == one
    assert rtrace(lift(R, 1, 2, inverse=True), 2, T) == one / q ** 4
    with pytest.raises(ValueError):
        rtrace(one, 2, T)


@settings(max_examples=15, deadline=None)
@given(mats(2, 1), mats(2, 2))
def test_rtrace_properties(X, Y):
    R, T = standard(2)
    # R-trace of the k-th ov-copy is the scalar R-trace of X
    X3 = copy_over(X.extend(2), R, 3)
    assert rtrace(X3, 3, T) == TensorOp.identity(2, 2) * T.rtrace_scalar(X.mat)
    # commutes with operators on the untraced slots
    Z = op_on(2, 3, list(range(64)))
    assert rtrace(Y.extend(1) * Z, 3, T) == Y * rtrace(Z, 3, T)
    # iterated one slot at a time equals tracing the trailing block
    assert rtrace(rtrace(Z, 3, T), 2, T) == rtrace(Z, 2, T)


def test_jm_family():
    R, _ = standard(2)
    jm = jm_family(R, 4)
    assert jm[1] == TensorOp.identity(2, 4)
    assert jm[2] == lift(R, 1, 4) * lift(R, 1, 4)
    for i in range(1, 5):
        assert jm[i] * jm.inv(i) == TensorOp.identity(2, 4)
        for j in range(1, 5):
            assert jm[i] * jm[j] == jm[j] * jm[i]


def test_jm2_spectrum():
    R, _ = standard(2)
    J = jm_family(R, 2)[2]
    eye = TensorOp.identity(2, 2)
    assert ((J - eye * 4) * (J - eye / 4)).is_zero()


def test_hecke_expansion_of_inverse_jm():
    R, _ = standard(3)
    k = 3
    jm = jm_family(R, k + 1)
    r, ri = lift(R, k, k + 1), lift(R, k, k + 1, inverse=True)
    lhs = jm.inv(k + 1)
    rhs = ri * jm.inv(k) * r - ri * jm.inv(k) * R.nu
    assert lhs == rhs


def test_local_program_matches_dense_product():
    R, _ = standard(2)
    prog = LocalProgram(2, 3).r(R, 1).r(R, 2, inverse=True).scale(fmpq(3))
    dense = lift(R, 1, 3) * lift(R, 2, 3, inverse=True) * 3
    assert prog.operator() == dense
    V = to_array(dense.mat)
    assert to_matrix(prog.apply(np.eye(8, dtype=object) * fmpq(1))) == dense.mat
    assert to_matrix(V) == dense.mat


def test_size_cap():
    check_cap(3, 5, 3 ** 5)
    with pytest.raises(SizeCapError):
        check_cap(3, 6, 3 ** 5)
