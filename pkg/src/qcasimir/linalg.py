"""Dense exact matrix helpers on top of ``flint.fmpq_mat``.

Tensor slots are numbered from 1 and the first slot is the most
significant digit of a basis index (Kronecker order).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from flint import fmpq, fmpq_mat

__all__ = [
    "zeros", "identity", "from_rows", "kron", "embed", "partial_trace",
    "is_zero", "max_abs", "nonzero_columns", "pivots", "column_space",
    "select_columns", "nullspace", "solve_particular", "trace",
    "hstack", "vstack", "block_diag_kron",
]


def zeros(r: int, c: int | None = None) -> fmpq_mat:
    return fmpq_mat(r, r if c is None else c)


def identity(n: int) -> fmpq_mat:
    m = fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def from_rows(rows: Sequence[Sequence]) -> fmpq_mat:
    return fmpq_mat([[fmpq(x) if not isinstance(x, fmpq) else x for x in row] for row in rows])


def nonzeros(a: fmpq_mat) -> list[tuple[int, int, fmpq]]:
    entries = a.entries()
    nc = a.ncols()
    return [(i // nc, i % nc, v) for i, v in enumerate(entries) if v != 0]


def kron(a: fmpq_mat, b: fmpq_mat) -> fmpq_mat:
    rb, cb = b.nrows(), b.ncols()
    out = fmpq_mat(a.nrows() * rb, a.ncols() * cb)
    bnz = nonzeros(b)
    for i, j, v in nonzeros(a):
        for k, l, w in bnz:
            out[i * rb + k, j * cb + l] = v * w
    return out


def embed(op: fmpq_mat, start: int, width: int, k: int, n: int) -> fmpq_mat:
    """``I^(start-1) (x) op (x) I^(k-start-width+1)`` with ``op`` on ``width`` slots."""
    if start < 1 or start + width - 1 > k:
        raise IndexError(f"slots {start}..{start + width - 1} outside 1..{k}")
    before = n ** (start - 1)
    bw = n ** width
    after = n ** (k - start - width + 1)
    out = fmpq_mat(n ** k, n ** k)
    nz = nonzeros(op)
    for x in range(before):
        for r, c, v in nz:
            row = (x * bw + r) * after
            col = (x * bw + c) * after
            for y in range(after):
                out[row + y, col + y] = v
    return out


def partial_trace(a: fmpq_mat, keep: int, n: int, k: int) -> fmpq_mat:
    """Ordinary trace over the trailing ``k - keep`` slots."""
    d_keep = n ** keep
    d_tr = n ** (k - keep)
    out = fmpq_mat(d_keep, d_keep)
    for r in range(d_keep):
        for c in range(d_keep):
            s = fmpq(0)
            for t in range(d_tr):
                s += a[r * d_tr + t, c * d_tr + t]
            out[r, c] = s
    return out


def trace(a: fmpq_mat) -> fmpq:
    return sum((a[i, i] for i in range(a.nrows())), fmpq(0))


def is_zero(a: fmpq_mat) -> bool:
    return all(v == 0 for v in a.entries())


def max_abs(a: fmpq_mat) -> fmpq:
    best = fmpq(0)
    for v in a.entries():
        if v < 0:
            v = -v
        if v > best:
            best = v
    return best


def pivots(rref: fmpq_mat, rank: int) -> list[int]:
    out = []
    nc = rref.ncols()
    for i in range(rank):
        for j in range(nc):
            if rref[i, j] != 0:
                out.append(j)
                break
    return out


def select_columns(a: fmpq_mat, cols: Sequence[int]) -> fmpq_mat:
    out = fmpq_mat(a.nrows(), len(cols))
    for jj, j in enumerate(cols):
        for i in range(a.nrows()):
            v = a[i, j]
            if v != 0:
                out[i, jj] = v
    return out


def nonzero_columns(a: fmpq_mat) -> list[int]:
    return sorted({c for _, c, _ in nonzeros(a)})


def column_space(a: fmpq_mat) -> fmpq_mat:
    """Columns of ``a`` forming a basis of its image."""
    rr, rank = a.rref()
    return select_columns(a, pivots(rr, rank))


def nullspace(a: fmpq_mat) -> fmpq_mat:
    """Matrix whose columns span the right kernel of ``a``."""
    rr, rank = a.rref()
    piv = pivots(rr, rank)
    free = [j for j in range(a.ncols()) if j not in set(piv)]
    out = fmpq_mat(a.ncols(), len(free))
    for jj, f in enumerate(free):
        out[f, jj] = 1
        for i, p in enumerate(piv):
            v = rr[i, f]
            if v != 0:
                out[p, jj] = -v
    return out


def solve_particular(a: fmpq_mat, b: fmpq_mat) -> fmpq_mat | None:
    """A solution of ``a x = b`` (free variables zero), or ``None``."""
    n = a.ncols()
    aug = fmpq_mat(a.nrows(), n + b.ncols())
    for i, j, v in nonzeros(a):
        aug[i, j] = v
    for i, j, v in nonzeros(b):
        aug[i, n + j] = v
    rr, rank = aug.rref()
    piv = pivots(rr, rank)
    if any(p >= n for p in piv):
        return None
    x = fmpq_mat(n, b.ncols())
    for i, p in enumerate(piv):
        for j in range(b.ncols()):
            x[p, j] = rr[i, n + j]
    return x


def hstack(mats: Sequence[fmpq_mat], rows: int | None = None) -> fmpq_mat:
    r = mats[0].nrows() if mats else (rows or 0)
    out = fmpq_mat(r, sum(m.ncols() for m in mats))
    off = 0
    for m in mats:
        for i, j, v in nonzeros(m):
            out[i, off + j] = v
        off += m.ncols()
    return out


def vstack(mats: Sequence[fmpq_mat], cols: int | None = None) -> fmpq_mat:
    c = mats[0].ncols() if mats else (cols or 0)
    out = fmpq_mat(sum(m.nrows() for m in mats), c)
    off = 0
    for m in mats:
        for i, j, v in nonzeros(m):
            out[off + i, j] = v
        off += m.nrows()
    return out


def block_diag_kron(a: fmpq_mat, d: int) -> fmpq_mat:
    """``a (x) I_d``; a 0 x 0 result when ``d == 0``."""
    if d == 0:
        return fmpq_mat(0, 0)
    return kron(a, identity(d))
