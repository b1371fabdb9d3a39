"""Exact operators on tensor powers of V."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from flint import fmpq, fmpq_mat

from . import linalg
from .rmatrix import HeckeSymmetry, TraceData, rtrace_last

__all__ = [
    "TensorOp", "JMFamily", "SizeCapError", "DEFAULT_CAP",
    "lift", "lift_op", "copy_over", "copy_under", "rtrace", "jm_family",
    "LocalProgram", "to_array", "to_matrix",
]

DEFAULT_CAP = 3 ** 5


class SizeCapError(ValueError):
    pass


def check_cap(N: int, k: int, cap: int | None) -> None:
    if cap is not None and N ** k > cap:
        raise SizeCapError(f"N^k = {N}^{k} exceeds the size cap {cap}")


@dataclass(frozen=True, eq=False)
class TensorOp:
    """Operator on V^(x)k stored as a dense N^k x N^k rational matrix."""

    N: int
    k: int
    mat: fmpq_mat

    def __post_init__(self):
        d = self.N ** self.k
        if self.mat.nrows() != d or self.mat.ncols() != d:
            raise ValueError(f"matrix is not {d}x{d}")

    @classmethod
    def identity(cls, N: int, k: int) -> TensorOp:
        return cls(N, k, linalg.identity(N ** k))

    @classmethod
    def zero(cls, N: int, k: int) -> TensorOp:
        return cls(N, k, linalg.zeros(N ** k))

    @property
    def dim(self) -> int:
        return self.N ** self.k

    def _same(self, other: TensorOp) -> None:
        if (self.N, self.k) != (other.N, other.k):
            raise ValueError(f"shape mismatch: (N, k) = {(self.N, self.k)} vs {(other.N, other.k)}")

    def __mul__(self, other):
        if isinstance(other, TensorOp):
            self._same(other)
            return TensorOp(self.N, self.k, self.mat * other.mat)
        return TensorOp(self.N, self.k, self.mat * other)

    def __rmul__(self, other):
        return TensorOp(self.N, self.k, self.mat * other)

    def __add__(self, other: TensorOp) -> TensorOp:
        self._same(other)
        return TensorOp(self.N, self.k, self.mat + other.mat)

    def __sub__(self, other: TensorOp) -> TensorOp:
        self._same(other)
        return TensorOp(self.N, self.k, self.mat - other.mat)

    def __neg__(self) -> TensorOp:
        return TensorOp(self.N, self.k, -self.mat)

    def __truediv__(self, c) -> TensorOp:
        return TensorOp(self.N, self.k, self.mat / c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorOp):
            return NotImplemented
        return (self.N, self.k) == (other.N, other.k) and self.mat == other.mat

    __hash__ = None

    @cached_property
    def inverse(self) -> TensorOp:
        return TensorOp(self.N, self.k, self.mat.inv())

    def is_zero(self) -> bool:
        return linalg.is_zero(self.mat)

    def max_abs(self) -> fmpq:
        return linalg.max_abs(self.mat)

    def rank(self) -> int:
        return self.mat.rank()

    def trace(self) -> fmpq:
        return linalg.trace(self.mat)

    def commutator(self, other: TensorOp) -> TensorOp:
        return self * other - other * self

    def extend(self, extra: int) -> TensorOp:
        """``self (x) I`` on ``extra`` trailing slots."""
        if extra == 0:
            return self
        return TensorOp(self.N, self.k + extra, linalg.kron(self.mat, linalg.identity(self.N ** extra)))


def lift_op(op: fmpq_mat, N: int, start: int, width: int, k: int) -> TensorOp:
    return TensorOp(N, k, linalg.embed(op, start, width, k, N))


def lift(R: HeckeSymmetry | fmpq_mat, i: int, k: int, N: int | None = None,
         inverse: bool = False) -> TensorOp:
    """``R_i`` (or ``R_i^{-1}``) on k slots."""
    if isinstance(R, HeckeSymmetry):
        N = R.N
        mat = R.inverse if inverse else R.matrix
    else:
        mat = R.inv() if inverse else R
        if N is None:
            raise ValueError("N required for a bare matrix")
    if not 1 <= i <= k - 1:
        raise IndexError(f"R_{i} needs 1 <= i <= k - 1 = {k - 1}")
    return lift_op(mat, N, i, 2, k)


def copy_over(X: TensorOp, R: HeckeSymmetry, i: int) -> TensorOp:
    """``X_{ov i}``: conjugate ``X`` (supported on slot 1) by ``R_{i-1} ... R_1``."""
    if not 1 <= i <= X.k:
        raise IndexError(f"copy slot {i} outside 1..{X.k}")
    out = X
    for j in range(1, i):
        out = lift(R, j, X.k) * out * lift(R, j, X.k, inverse=True)
    return out


def copy_under(X: TensorOp, R: HeckeSymmetry, i: int) -> TensorOp:
    """``X_{un i}``: conjugate ``X`` (supported on slot 1) by ``R_{i-1}^{-1} ... R_1^{-1}``."""
    if not 1 <= i <= X.k:
        raise IndexError(f"copy slot {i} outside 1..{X.k}")
    out = X
    for j in range(1, i):
        out = lift(R, j, X.k, inverse=True) * out * lift(R, j, X.k)
    return out


def rtrace(X: TensorOp, first: int, T: TraceData) -> TensorOp:
    """R-trace over the trailing slots ``first..k``; result lives on ``first - 1`` slots."""
    if not 1 <= first <= X.k:
        raise ValueError(f"slot set {first}..{X.k} is not a trailing block")
    width = X.k - first + 1
    return TensorOp(X.N, first - 1, rtrace_last(X.mat, T.trace_matrix, X.N, X.k, width))


@dataclass(frozen=True, eq=False)
class JMFamily:
    J: tuple[TensorOp, ...]
    Jinv: tuple[TensorOp, ...]

    @property
    def k(self) -> int:
        return len(self.J)

    def __getitem__(self, i: int) -> TensorOp:
        """1-based access: ``family[i] = J_i``."""
        return self.J[i - 1]

    def inv(self, i: int) -> TensorOp:
        return self.Jinv[i - 1]


def jm_family(R: HeckeSymmetry, k: int) -> JMFamily:
    """J_1 = I, J_{i+1} = R_i J_i R_i on V^(x)k, with exact inverses."""
    if k < 1:
        raise ValueError("k must be positive")
    J = [TensorOp.identity(R.N, k)]
    Jinv = [TensorOp.identity(R.N, k)]
    for i in range(1, k):
        Ri = lift(R, i, k)
        Rinv = lift(R, i, k, inverse=True)
        J.append(Ri * J[-1] * Ri)
        Jinv.append(Rinv * Jinv[-1] * Rinv)
    return JMFamily(tuple(J), tuple(Jinv))


# --------------------------------------------------------------------------
# products of local operators applied to batches of vectors

def to_array(mat: fmpq_mat) -> np.ndarray:
    arr = np.empty((mat.nrows(), mat.ncols()), dtype=object)
    entries = mat.entries()
    nc = mat.ncols()
    for idx, v in enumerate(entries):
        arr[idx // nc, idx % nc] = v
    return arr


def to_matrix(arr: np.ndarray) -> fmpq_mat:
    out = fmpq_mat(arr.shape[0], arr.shape[1])
    for (i, j), v in np.ndenumerate(arr):
        if v != 0:
            out[i, j] = v
    return out


def _zeros(shape) -> np.ndarray:
    return np.full(shape, fmpq(0), dtype=object)


@dataclass
class LocalProgram:
    """Operator on ``slots`` tensor slots written as a product of local factors.

    Factors are stored in written order (leftmost first) and applied to
    column batches right to left, so no N^slots x N^slots matrix is formed.
    """

    N: int
    slots: int
    steps: list = None

    def __post_init__(self):
        if self.steps is None:
            self.steps = []

    def then(self, op: fmpq_mat, start: int, width: int) -> LocalProgram:
        if start < 1 or start + width - 1 > self.slots:
            raise IndexError(f"slots {start}..{start + width - 1} outside 1..{self.slots}")
        self.steps.append((linalg.nonzeros(op), start, width))
        return self

    def r(self, R: HeckeSymmetry, i: int, inverse: bool = False) -> LocalProgram:
        return self.then(R.inverse if inverse else R.matrix, i, 2)

    def scale(self, c) -> LocalProgram:
        return self.then(fmpq_mat([[c]]) if self.N == 1 else linalg.identity(self.N) * c, 1, 1)

    def apply(self, state: np.ndarray) -> np.ndarray:
        """Apply to the columns of an object array of shape (N^slots, B)."""
        batch = state.shape[1]
        for nz, start, width in reversed(self.steps):
            pre = self.N ** (start - 1)
            mid = self.N ** width
            post = self.N ** (self.slots - start - width + 1) * batch
            view = state.reshape(pre, mid, post)
            out = _zeros(view.shape)
            for r, c, v in nz:
                out[:, r, :] += view[:, c, :] * v
            state = out.reshape(-1, batch)
        return state

    def operator(self) -> TensorOp:
        eye = _zeros((self.N ** self.slots, self.N ** self.slots))
        for i in range(eye.shape[0]):
            eye[i, i] = fmpq(1)
        return TensorOp(self.N, self.slots, to_matrix(self.apply(eye)))
