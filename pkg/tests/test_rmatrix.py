import json

import pytest
from flint import fmpq, fmpq_mat

from qcasimir import linalg
from qcasimir.qscalar import QContext
from qcasimir.rmatrix import (RMatrixError, build_multiparameter, build_standard,
                              conjugate, contraction_residual, dump_rmatrix, load_rmatrix,
                              skew_inverse, trace_data, validate)

from conftest import QS, standard


@pytest.mark.parametrize("N", [1, 2, 3])
def test_standard_preset_is_hecke(N, q):
    rep = validate(build_standard(N, QContext(q)))
    assert rep.braid_residual == 0
    assert rep.hecke_residual == 0


def test_eigenvalues_of_standard_r():
    R, _ = standard(2)
    one = linalg.identity(4)
    # (R - q)(R + 1/q) = 0 with both factors nonzero
    assert not linalg.is_zero(R.matrix - one * 2)
    assert not linalg.is_zero(R.matrix + one / 2)


def test_trace_matrix_n2():
    _, T = standard(2)
    assert T.trace_matrix == fmpq_mat([[fmpq(1, 8), 0], [0, fmpq(1, 2)]])
    assert (T.rank, T.hilbert, T.pairing, T.traced_slot) == (2, (1, 2, 1), "R.Psi", 2)


def test_trace_matrix_n3():
    _, T = standard(3)
    assert [T.trace_matrix[i, i] for i in range(3)] == [fmpq(1, 32), fmpq(1, 8), fmpq(1, 2)]
    assert T.rank == 3 and T.hilbert == (1, 3, 3, 1)


def test_skew_inverse_contracts():
    R, T = standard(2)
    psi = skew_inverse(R, T.pairing)
    assert contraction_residual(R, psi, T.pairing) == 0


@pytest.mark.parametrize("N", [2, 3])
def test_equal_rank_configurations(N):
    ctx = QContext(fmpq(2))
    twisted = build_multiparameter(N, ctx, {(1, 2): fmpq(3, 5)})
    g = linalg.identity(N)
    g[0, N - 1] = fmpq(2, 3)
    conj = conjugate(build_standard(N, ctx), g)
    for R in (twisted, conj):
        assert validate(R).ok
        assert trace_data(R).rank == N
    assert twisted != build_standard(N, ctx)


def test_multiparameter_rejects_bad_keys():
    with pytest.raises(ValueError):
        build_multiparameter(2, QContext(fmpq(2)), {(2, 1): 3})


def test_dump_load_round_trip(tmp_path):
    ctx = QContext(fmpq(13, 7))
    R = build_standard(3, ctx)
    path = tmp_path / "r.json"
    path.write_text(json.dumps(dump_rmatrix(R)))
    assert load_rmatrix(path, ctx) == R
    assert load_rmatrix(dump_rmatrix(R), ctx) == R


def test_symbolic_entries_evaluate_at_q():
    doc = {"dim": 1, "entries": [{"out": [1, 1], "in": [1, 1], "value": "q"}]}
    R = load_rmatrix(doc, QContext(fmpq(7, 5)))
    assert R.matrix[0, 0] == fmpq(7, 5)
    assert validate(R).ok


def _doc(entries, dim=2):
    return {"dim": dim, "entries": entries}


@pytest.mark.parametrize("doc", [
    _doc([{"out": [1, 3], "in": [1, 1], "value": "1"}]),
    _doc([{"out": [1, 1], "in": [1, 1], "value": "1"}, {"out": [1, 1], "in": [1, 1], "value": "2"}]),
    _doc([{"out": [1, 1], "in": [1, 1], "value": "q^"}]),
    _doc([{"in": [1, 1], "value": "1"}]),
    {"dim": 2},
    {"dim": 0, "entries": []},
    {"dim": 2, "entries": [], "convention": "matrix"},
])
def test_malformed_documents(doc):
    with pytest.raises(RMatrixError):
        load_rmatrix(doc, QContext(fmpq(2)))


def test_malformed_json_text():
    with pytest.raises(RMatrixError):
        load_rmatrix("{not json", QContext(fmpq(2)))


def test_perturbed_entry_fails_validation():
    doc = dump_rmatrix(build_standard(2, QContext(fmpq(2))))
    doc["entries"][0]["value"] = "5/2"
    assert not validate(load_rmatrix(doc, QContext(fmpq(2)))).ok


def test_wrong_shape_rejected():
    from qcasimir.rmatrix import HeckeSymmetry
    with pytest.raises(RMatrixError):
        HeckeSymmetry(2, linalg.identity(3), QContext(fmpq(2)))
