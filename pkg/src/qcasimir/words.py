"""Word model of the coordinate RE algebra and its double.

B_k is the degree-k part of the algebra generated by the entries of M
subject to R M_1 R M_1 = M_1 R M_1 R.  It is realized as W_k / I_k with
W_k the free words of length k in the N^2 letters m^a_b (letter index
a*N + b) and I_k spanned by relation words.  Generators of L(R) and the
quantum derivatives act on B_k through their permutation relations with
M, ending in the counit.

Operator-valued matrices over p auxiliary slots are stored as single
rational matrices in aux-major layout: index = I * dim + w.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from flint import fmpq, fmpq_mat

from . import linalg
from .rmatrix import HeckeSymmetry, TraceData

__all__ = [
    "WordModel", "generator_block", "scalar_block", "copy_block",
    "rtrace_block", "apply_blockwise",
]


# --------------------------------------------------------------------------
# symbolic matrices on two slots: entries are {word: coefficient}

def _numeric(mat: fmpq_mat) -> list[list[dict]]:
    d = mat.nrows()
    return [[({(): mat[r, c]} if mat[r, c] != 0 else {}) for c in range(d)] for r in range(d)]


def _first_slot(kind: str, N: int) -> list[list[dict]]:
    n = N * N
    out = [[{} for _ in range(n)] for _ in range(n)]
    for a in range(N):
        for b in range(N):
            for c in range(N):
                out[a * N + c][b * N + c] = {((kind, a * N + b),): fmpq(1)}
    return out


def _sym_mul(A, B):
    d = len(A)
    out = [[{} for _ in range(d)] for _ in range(d)]
    for r in range(d):
        for t in range(d):
            if not A[r][t]:
                continue
            for c in range(d):
                if not B[t][c]:
                    continue
                acc = out[r][c]
                for w1, c1 in A[r][t].items():
                    for w2, c2 in B[t][c].items():
                        w = w1 + w2
                        acc[w] = acc.get(w, fmpq(0)) + c1 * c2
    return out


def _sym_prod(*mats):
    out = mats[0]
    for m in mats[1:]:
        out = _sym_mul(out, m)
    return out


def _sym_add(A, B, sign=1):
    d = len(A)
    out = [[dict(A[r][c]) for c in range(d)] for r in range(d)]
    for r in range(d):
        for c in range(d):
            for w, v in B[r][c].items():
                out[r][c][w] = out[r][c].get(w, fmpq(0)) + sign * v
    return out


def _solve_exchange(lhs, rhs, first: str, second: str, n: int):
    """From lhs (first.second words) = rhs (second.first words + constants)
    return S and c with first_g second_h = sum S[(g,h),(x,y)] second_x first_y + c[(g,h)]."""
    F = fmpq_mat(n * n, n * n)
    G = fmpq_mat(n * n, n * n)
    c = fmpq_mat(n * n, 1)
    for r in range(n):
        for col in range(n):
            row = r * n + col
            for word, v in lhs[r][col].items():
                (k1, g), (k2, h) = word
                assert (k1, k2) == (first, second)
                F[row, g * n + h] += v
            for word, v in rhs[r][col].items():
                if v == 0:
                    continue
                if word == ():
                    c[row, 0] += v
                    continue
                (k1, g), (k2, h) = word
                assert (k1, k2) == (second, first)
                G[row, g * n + h] += v
    Finv = F.inv()
    return Finv * G, Finv * c


# --------------------------------------------------------------------------
# block operators

def generator_block(ops: list[fmpq_mat], N: int, p: int, din: int, dout: int) -> fmpq_mat:
    """Generator matrix placed in aux slot 1 of p slots, entry (a, b) = ops[a*N + b]."""
    D = N ** p
    rest = N ** (p - 1)
    out = fmpq_mat(D * dout, D * din)
    for a in range(N):
        for b in range(N):
            nz = linalg.nonzeros(ops[a * N + b])
            if not nz:
                continue
            for x in range(rest):
                I = a * rest + x
                J = b * rest + x
                for r, c, v in nz:
                    out[I * dout + r, J * din + c] = v
    return out


def scalar_block(a: fmpq_mat, d: int) -> fmpq_mat:
    return linalg.block_diag_kron(a, d)


def copy_block(F: fmpq_mat, R: HeckeSymmetry, s: int, p: int, din: int, dout: int,
               under: bool = False) -> fmpq_mat:
    """Move a slot-1 block to slot s+1 by R_s ... R_1 (.) R_1^{-1} ... R_s^{-1}.

    ``under`` uses R^{-1} on the left and R on the right instead.
    """
    for t in range(1, s + 1):
        Rt = linalg.embed(R.matrix, t, 2, p, R.N)
        Rti = linalg.embed(R.inverse, t, 2, p, R.N)
        if under:
            Rt, Rti = Rti, Rt
        F = scalar_block(Rt, dout) * F * scalar_block(Rti, din)
    return F


def rtrace_block(mx: fmpq_mat, C: fmpq_mat, N: int, p: int, dout: int, din: int) -> fmpq_mat:
    """Tr over all p aux slots of (C (x) ... (x) C) mx; result is dout x din."""
    Cp = C
    for _ in range(p - 1):
        Cp = linalg.kron(Cp, C)
    weighted = scalar_block(Cp, dout) * mx
    out = fmpq_mat(dout, din)
    for I in range(N ** p):
        for r in range(dout):
            for c in range(din):
                v = weighted[I * dout + r, I * din + c]
                if v != 0:
                    out[r, c] += v
    return out


def apply_blockwise(W: fmpq_mat, X: fmpq_mat, blocks: int, d: int) -> fmpq_mat:
    """(I_blocks (x) W) X for a block column X of ``blocks`` rows of size d."""
    return linalg.kron(linalg.identity(blocks), W) * X


# --------------------------------------------------------------------------

@dataclass(eq=False)
class WordModel:
    """Quotients B_0..B_kmax with the actions of M (left multiplication),
    L (generators of the RE algebra) and D (quantum derivatives)."""

    R: HeckeSymmetry
    trace: TraceData
    kmax: int
    dims: list[int] = field(init=False)
    proj: list[fmpq_mat] = field(init=False)
    basis: list[list[int]] = field(init=False)
    LM: list[list[fmpq_mat]] = field(init=False)
    LA: list[list[fmpq_mat]] = field(init=False)
    DA: list[list[fmpq_mat | None]] = field(init=False)
    ideal_residual: dict[str, fmpq] = field(init=False)

    def __post_init__(self):
        self.cache = {}
        self.N = self.R.N
        self.n = self.N * self.N
        self._relations()
        self._quotients()
        self._actions()

    # -- relations ---------------------------------------------------------
    def _relations(self):
        N, n = self.N, self.n
        Rs = _numeric(self.R.matrix)
        Ris = _numeric(self.R.inverse)
        M1, L1, D1 = _first_slot("m", N), _first_slot("l", N), _first_slot("d", N)

        re = _sym_add(_sym_prod(Rs, M1, Rs, M1), _sym_prod(M1, Rs, M1, Rs), -1)
        rows = fmpq_mat(n * n, n * n)
        for r in range(n):
            for c in range(n):
                for ((_, g), (_, h)), v in re[r][c].items():
                    rows[r * n + c, g * n + h] += v
        rr, rank = rows.rref()
        self.relations = fmpq_mat([[rr[i, j] for j in range(n * n)] for i in range(rank)]) \
            if rank else fmpq_mat(0, n * n)

        self.SL, cL = _solve_exchange(_sym_prod(Rs, L1, Rs, M1), _sym_prod(M1, Rs, L1, Ris), "l", "m", n)
        if not linalg.is_zero(cL):
            raise ArithmeticError("L-M exchange relation has a constant term")
        rhs = _sym_add(_sym_prod(Rs, M1, Ris, D1), Rs)
        self.SD, self.cD = _solve_exchange(_sym_prod(D1, Rs, M1, Rs), rhs, "d", "m", n)

    # -- quotients -------------------------------------------------------
    def _ideal(self, k: int) -> tuple[fmpq_mat, int]:
        n = self.n
        nrel = self.relations.nrows()
        gens = []
        for pos in range(k - 1):
            pre = n ** pos
            post = n ** (k - pos - 2)
            for i in range(nrel):
                rel = [(j, self.relations[i, j]) for j in range(n * n) if self.relations[i, j] != 0]
                for a in range(pre):
                    for b in range(post):
                        gens.append({(a * n * n + j) * post + b: v for j, v in rel})
        if not gens:
            return fmpq_mat(0, n ** k), 0
        mat = fmpq_mat(len(gens), n ** k)
        for i, g in enumerate(gens):
            for j, v in g.items():
                mat[i, j] = v
        return mat.rref()

    def _quotients(self):
        n = self.n
        self.dims, self.proj, self.basis, self._ideal_rows = [], [], [], []
        for k in range(self.kmax + 1):
            d = n ** k
            rr, rank = self._ideal(k)
            piv = linalg.pivots(rr, rank)
            pivset = set(piv)
            free = [j for j in range(d) if j not in pivset]
            where = {j: i for i, j in enumerate(free)}
            P = fmpq_mat(len(free), d)
            for j in free:
                P[where[j], j] = 1
            for i, pj in enumerate(piv):
                for j in free:
                    v = rr[i, j]
                    if v != 0:
                        P[where[j], pj] = -v
            self.dims.append(len(free))
            self.proj.append(P)
            self.basis.append(free)
            self._ideal_rows.append(fmpq_mat([[rr[i, j] for j in range(d)] for i in range(rank)])
                                    if rank else fmpq_mat(0, d))

    # -- actions ---------------------------------------------------------
    def _actions(self):
        N, n = self.N, self.n
        self.LM = []
        for k in range(self.kmax):
            cols = [[g * n ** k + w for w in self.basis[k]] for g in range(n)]
            self.LM.append([linalg.select_columns(self.proj[k + 1], c) for c in cols])

        self.LA = [[fmpq_mat([[1 if g // N == g % N else 0]]) for g in range(n)]]
        self.DA = [[None] * n]
        residual = {"L": fmpq(0), "D": fmpq(0)}
        for k in range(1, self.kmax + 1):
            Pprev = self.proj[k - 1]
            V = [self.LA[k - 1][g] * Pprev for g in range(n)]
            U = {(x, y): self.LM[k - 1][x] * V[y] for x in range(n) for y in range(n)}
            full_L = [self._assemble(self.SL, U, g, self.dims[k], n ** (k - 1)) for g in range(n)]

            if k >= 2:
                VD = [self.DA[k - 1][g] * Pprev for g in range(n)]
                UD = {(x, y): self.LM[k - 2][x] * VD[y] for x in range(n) for y in range(n)}
            else:
                UD = None
            full_D = []
            for g in range(n):
                blocks = []
                for x in range(n):
                    blk = fmpq_mat(self.dims[k - 1], n ** (k - 1))
                    if UD is not None:
                        for xx in range(n):
                            for y in range(n):
                                s = self.SD[g * n + x, xx * n + y]
                                if s != 0:
                                    blk += UD[(xx, y)] * s
                    c = self.cD[g * n + x, 0]
                    if c != 0:
                        blk += Pprev * c
                    blocks.append(blk)
                full_D.append(linalg.hstack(blocks))

            ideal_t = self._ideal_rows[k].transpose()
            if ideal_t.ncols():
                for g in range(n):
                    residual["L"] = max(residual["L"], linalg.max_abs(full_L[g] * ideal_t))
                    residual["D"] = max(residual["D"], linalg.max_abs(full_D[g] * ideal_t))
            self.LA.append([linalg.select_columns(full_L[g], self.basis[k]) for g in range(n)])
            self.DA.append([linalg.select_columns(full_D[g], self.basis[k]) for g in range(n)])
        self.ideal_residual = residual

    def _assemble(self, S, U, g, rows, width):
        n = self.n
        blocks = []
        for x in range(n):
            blk = fmpq_mat(rows, width)
            for xx in range(n):
                for y in range(n):
                    s = S[g * n + x, xx * n + y]
                    if s != 0:
                        blk += U[(xx, y)] * s
            blocks.append(blk)
        return linalg.hstack(blocks)

    # -- derived objects -------------------------------------------------
    @property
    def C(self) -> fmpq_mat:
        return self.trace.trace_matrix

    def m_block(self, k: int, p: int, slot: int = 1) -> fmpq_mat:
        """M_{ov slot} over p aux slots as a block map B_{k-1} -> B_k."""
        F = generator_block(self.LM[k - 1], self.N, p, self.dims[k - 1], self.dims[k])
        return copy_block(F, self.R, slot - 1, p, self.dims[k - 1], self.dims[k])

    def d_block(self, k: int, p: int, slot: int = 1) -> fmpq_mat:
        """D_{ov slot} over p aux slots as a block map B_k -> B_{k-1}."""
        F = generator_block(self.DA[k], self.N, p, self.dims[k], self.dims[k - 1])
        return copy_block(F, self.R, slot - 1, p, self.dims[k], self.dims[k - 1])

    def l_block(self, k: int, p: int, slot: int = 1) -> fmpq_mat:
        d = self.dims[k]
        F = generator_block(self.LA[k], self.N, p, d, d)
        return copy_block(F, self.R, slot - 1, p, d, d)

    def hat_l_block(self, k: int) -> fmpq_mat:
        """The matrix M D over one aux slot, acting on B_k."""
        if k == 0:
            return fmpq_mat(self.N, self.N)
        return self.m_block(k, 1) * self.d_block(k, 1)

    def rtrace(self, mx: fmpq_mat, p: int, dout: int, din: int) -> fmpq_mat:
        return rtrace_block(mx, self.C, self.N, p, dout, din)

    def x_chain(self, k: int) -> fmpq_mat:
        """M_1 M_ov2 ... M_ovk as a block map B_0 -> B_k over k aux slots."""
        if k == 0:
            return fmpq_mat([[1]])
        out = None
        for s in range(k):
            F = self.m_block(k - s, k, slot=s + 1)
            out = F if out is None else out * F
        return out

    def schur_vector(self, P: fmpq_mat, k: int) -> fmpq_mat:
        """Tr_{R(1..k)}(P M_1 M_ov2 ... M_ovk) as a column vector in B_k."""
        if k == 0:
            return fmpq_mat([[1]])
        X = self.x_chain(k)
        return self.rtrace(scalar_block(P, self.dims[k]) * X, k, self.dims[k], 1)

    def re_residual(self, k: int) -> fmpq:
        """R L_1 R L_1 - L_1 R L_1 R with L acting on B_k."""
        d = self.dims[k]
        L1 = self.l_block(k, 2)
        R12 = scalar_block(self.R.matrix, d)
        return linalg.max_abs(R12 * L1 * R12 * L1 - L1 * R12 * L1 * R12)

    def central(self, P: fmpq_mat, p: int, k: int) -> fmpq_mat:
        """Tr_{R(1..p)}(P L_1 L_ov2 ... L_ovp) as an operator on B_k."""
        d = self.dims[k]
        if p == 0:
            return linalg.identity(d) * P[0, 0]
        prod = None
        for s in range(p):
            F = self.l_block(k, p, slot=s + 1)
            prod = F if prod is None else prod * F
        return self.rtrace(scalar_block(P, d) * prod, p, d, d)

    def intertwines(self, T: fmpq_mat, W: fmpq_mat, k: int) -> fmpq:
        """Residual of (T (x) I) X = (I (x) W) X on the M-word chain X of length k."""
        X = self.x_chain(k)
        d = self.dims[k]
        lhs = scalar_block(T, d) * X
        rhs = apply_blockwise(W, X, self.N ** k, d)
        return linalg.max_abs(lhs - rhs)

    def coefficient_operator(self, W: fmpq_mat, k: int) -> tuple[fmpq_mat | None, int]:
        """A T on V^(x)k with (T (x) I) X = (I (x) W) X, and the nullity of that system."""
        X = self.x_chain(k)
        d = self.dims[k]
        D = self.N ** k
        Y = fmpq_mat(D, D * d)
        Z = fmpq_mat(D, D * d)
        WX = apply_blockwise(W, X, D, d)
        for K in range(D):
            for J in range(D):
                for r in range(d):
                    v = X[K * d + r, J]
                    if v != 0:
                        Y[K, J * d + r] = v
                    w = WX[K * d + r, J]
                    if w != 0:
                        Z[K, J * d + r] = w
        sol = linalg.solve_particular(Y.transpose(), Z.transpose())
        nullity = D - Y.rank()
        return (sol.transpose() if sol is not None else None), nullity
