import pytest
from flint import fmpq

from qcasimir.tensor import TensorOp, jm_family
from qcasimir.young import (Partition, StandardTableau, antisymmetrizer, enumerate_tableaux,
                            hook_count, partitions, primitive_idempotents, symmetrizer,
                            tableau_projector)

from conftest import standard


def test_partition_parsing_and_shape_data():
    lam = Partition("2,1")
    assert lam == Partition((2, 1)) == Partition("(2,1)")
    assert str(lam) == "(2,1)" and lam.weight == 3 and lam.rows == 2
    assert lam.conjugate() == Partition((2, 1))
    assert Partition((3, 1)).conjugate() == Partition((2, 1, 1))
    assert lam.contents() == [0, 1, -1]
    assert lam.addable() == [0, 1, 2]
    assert lam.add_box(1) == Partition((2, 2))
    assert Partition("") == Partition() and str(Partition()) == "()"
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_partition_counts():
    assert [len(partitions(k)) for k in range(7)] == [1, 1, 2, 3, 5, 7, 11]
    assert partitions(4, max_rows=2) == [Partition((4,)), Partition((3, 1)), Partition((2, 2))]


@pytest.mark.parametrize("shape,count", [((3, 2, 1), 16), ((2, 1), 2), ((4,), 1), ((2, 2), 2), ((3, 1, 1), 6)])
def test_hook_count_matches_enumeration(shape, count):
    assert hook_count(shape) == count
    tabs = enumerate_tableaux(shape)
    assert len(tabs) == count
    assert all(t.is_standard() and t.shape == Partition(shape) for t in tabs)


def test_tableau_data():
    t = enumerate_tableaux((2, 1))[0]
    assert t.label() == "12/3"
    assert t.contents() == (0, 1, -1)
    assert t.growth() == [Partition(), Partition((1,)), Partition((2,)), Partition((2, 1))]
    assert not StandardTableau(((2, 1), (3,))).is_standard()


def test_antisymmetrizer_ranks_and_vanishing():
    R, _ = standard(2)
    ranks = [antisymmetrizer(R, k).rank() for k in (1, 2, 3)]
    assert ranks == [2, 1, 0]
    A2 = antisymmetrizer(R, 2)
    assert A2 * A2 == A2
    S2 = symmetrizer(R, 2)
    assert S2 * S2 == S2 and (S2 * A2).is_zero()
    assert S2 + A2 == TensorOp.identity(2, 2)


@pytest.mark.parametrize("N,kmax", [(2, 4), (3, 3)])
def test_idempotent_sets_are_exact(N, kmax, q):
    R, T = standard(N, q)
    for k in range(1, kmax + 1):
        S = primitive_idempotents(R, k, T.m)
        res = S.residuals(q)
        assert all(v == 0 for v in res.values()), (k, res)
        for lam in S.shapes():
            assert len(S.for_shape(lam)) == hook_count(lam)


def test_projectors_with_too_many_rows_vanish():
    R, T = standard(2)
    jm = jm_family(R, 3)
    for t in enumerate_tableaux((1, 1, 1)):
        assert tableau_projector(R, t, jm).is_zero()
    jm4 = jm_family(R, 4)
    for lam in ((2, 1, 1), (1, 1, 1, 1)):
        for t in enumerate_tableaux(lam):
            assert tableau_projector(R, t, jm4).is_zero()
