"""Quantum cut-and-join operators.

A cut-and-join operator W^Delta is the product of the traces
Tr_R (M D)^{Delta_i}, rewritten with every D to the right of every M by
the derivative-coordinate relation without its constant term.  It acts on
B_k through the word model; its normal form is
Tr_{R(1..p)}(M_1 M_ov2 ... M_ovp D_ovp ... D_1 tail) for a numeric tail
on p = |Delta| slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from flint import fmpq, fmpq_mat

from . import linalg
from .casimir import CentralExpr, Character
from .qscalar import q_int
from .tensor import TensorOp, lift
from .words import WordModel, scalar_block
from .young import Partition, enumerate_tableaux, tableau_projector

__all__ = [
    "DerivativeRelation", "CutJoinOp", "BlockOp", "IdentityReport",
    "derivative_relation", "normal_form", "normal_order", "closed_form_tail",
    "leibniz_action", "platform_coefficient", "casimir_traces",
    "check_identity", "wdelta_spectrum", "commutator_report", "IDENTITIES",
]

Word = tuple  # of (kind, letter) with kind in {"m", "d"}


# --------------------------------------------------------------------------
# the derivative relation

@dataclass(frozen=True, eq=False)
class DerivativeRelation:
    """d_g m_h = sum S[(g,h),(x,y)] m_x d_y + c[(g,h)]; the truncated form drops c."""

    S: fmpq_mat
    constant: fmpq_mat
    n: int

    def push(self, g: int, h: int) -> list[tuple[fmpq, int, int]]:
        row = g * self.n + h
        return [(self.S[row, x * self.n + y], x, y)
                for x in range(self.n) for y in range(self.n) if self.S[row, x * self.n + y] != 0]

    def truncation_defect(self, words: WordModel) -> fmpq:
        """Full relation minus truncated relation minus the constant term (zero)."""
        return linalg.max_abs(words.SD - self.S) + linalg.max_abs(words.cD - self.constant)


def derivative_relation(words: WordModel) -> DerivativeRelation:
    return DerivativeRelation(words.SD, words.cD, words.n)


# --------------------------------------------------------------------------
# symbolic words

def _padd(acc: dict, word: Word, c: fmpq) -> None:
    v = acc.get(word, fmpq(0)) + c
    if v == 0:
        acc.pop(word, None)
    else:
        acc[word] = v


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            _padd(out, w1 + w2, c1 * c2)
    return out


def _trace_power(r: int, N: int, C: fmpq_mat) -> dict:
    """Tr_R (M D)^r as a combination of words."""
    hat = [[{(("m", a * N + c), ("d", c * N + b)): fmpq(1) for c in range(N)}
            for b in range(N)] for a in range(N)]
    power = hat
    for _ in range(r - 1):
        nxt = [[{} for _ in range(N)] for _ in range(N)]
        for i in range(N):
            for j in range(N):
                acc: dict = {}
                for t in range(N):
                    for w, c in _pmul(power[i][t], hat[t][j]).items():
                        _padd(acc, w, c)
                nxt[i][j] = acc
        power = nxt
    out: dict = {}
    for a in range(N):
        for b in range(N):
            if C[b, a] != 0:
                for w, c in power[a][b].items():
                    _padd(out, w, C[b, a] * c)
    return out


def normal_form(delta, words: WordModel) -> dict:
    """Product of Tr_R (MD)^{delta_i}, taken left to right, with all D moved right."""
    delta = Partition(delta)
    rel = derivative_relation(words)
    poly = {(): fmpq(1)}
    for part in delta:
        poly = _pmul(poly, _trace_power(part, words.N, words.C))
    out: dict = {}
    stack = list(poly.items())
    while stack:
        w, c = stack.pop()
        pos = next((i for i in range(len(w) - 1) if w[i][0] == "d" and w[i + 1][0] == "m"), None)
        if pos is None:
            _padd(out, w, c)
            continue
        for s, x, y in rel.push(w[pos][1], w[pos + 1][1]):
            stack.append((w[:pos] + (("m", x), ("d", y)) + w[pos + 2:], c * s))
    return out


def operator_of(poly: dict, k: int, words: WordModel) -> fmpq_mat:
    """Operator on B_k of a normal-ordered combination (D's act first, right to left)."""
    d = words.dims[k]
    out = fmpq_mat(d, d)
    cache: dict = {}

    def dpart(ds: tuple) -> tuple[fmpq_mat, int] | None:
        if ds in cache:
            return cache[ds]
        if not ds:
            res = (linalg.identity(d), k)
        else:
            prev = dpart(ds[1:])
            if prev is None or prev[1] == 0:
                res = None
            else:
                op, deg = prev
                res = (words.DA[deg][ds[0]] * op, deg - 1)
        cache[ds] = res
        return res

    for w, c in poly.items():
        ms = tuple(g for kind, g in w if kind == "m")
        ds = tuple(g for kind, g in w if kind == "d")
        part = dpart(ds)
        if part is None:
            continue
        op, deg = part
        for g in reversed(ms):
            op = words.LM[deg][g] * op
            deg += 1
        out += op * c
    return out


# --------------------------------------------------------------------------
# normal-ordered operators with a numeric tail

def _chain_block(words: WordModel, k: int, p: int) -> fmpq_mat:
    """M_1 M_ov2 ... M_ovp D_ovp ... D_1 as a block operator on B_k."""
    out = None
    for s in range(p):
        F = words.m_block(k - s, p, slot=s + 1)
        out = F if out is None else out * F
    for s in reversed(range(p)):
        out = out * words.d_block(k - s, p, slot=s + 1)
    return out


def _tail_blocks(words: WordModel, k: int, p: int) -> list[list[fmpq_mat]]:
    """H_{IJ} with Tr_{R(1..p)}(chain (tail (x) I)) = sum_{IJ} tail_{JI} H_{IJ}."""
    d = words.dims[k]
    Cp = words.C
    for _ in range(p - 1):
        Cp = linalg.kron(Cp, words.C)
    H = scalar_block(Cp, d) * _chain_block(words, k, p)
    D = words.N ** p
    return [[fmpq_mat([[H[I * d + r, J * d + c] for c in range(d)] for r in range(d)])
             for J in range(D)] for I in range(D)]


def with_tail(words: WordModel, k: int, p: int, tail: fmpq_mat) -> fmpq_mat:
    d = words.dims[k]
    if k < p:
        return fmpq_mat(d, d)
    H = _tail_blocks(words, k, p)
    out = fmpq_mat(d, d)
    for I, row in enumerate(H):
        for J, blk in enumerate(row):
            t = tail[J, I]
            if t != 0:
                out += blk * t
    return out


def closed_form_tail(delta, R) -> TensorOp | None:
    """Tails displayed for the three anchor partitions."""
    delta = Partition(delta)
    if delta == Partition((1,)):
        return TensorOp.identity(R.N, 1)
    if delta == Partition((2,)):
        return lift(R, 1, 2, inverse=True)
    if delta == Partition((1, 1)):
        r = lift(R, 1, 2, inverse=True)
        return r * r
    if delta == Partition((3,)):
        r = lift(R, 2, 3, inverse=True) * lift(R, 1, 3, inverse=True)
        return r * r
    return None


@dataclass(frozen=True, eq=False)
class CutJoinOp:
    delta: Partition
    slots: int
    tail: TensorOp | None
    nullity: int
    platforms: tuple[int, ...]
    reference: TensorOp | None
    reference_residual: fmpq | None
    poly_size: int

    @property
    def anchored(self) -> bool:
        return self.reference is not None

    @property
    def matches_closed_form(self) -> bool:
        return self.reference is not None and self.tail is not None and self.tail == self.reference


def normal_order(delta, words: WordModel, platforms=None) -> CutJoinOp:
    """Solve for the numeric tail of W^delta over the operators on B_k.

    The free algebra admits no such tail; the tail is determined modulo the
    relations of B, i.e. by the operators on B_k for k in ``platforms``.
    """
    delta = Partition(delta)
    p = delta.weight
    N = words.N
    platforms = tuple(range(p, words.kmax + 1)) if platforms is None else tuple(platforms)
    poly = normal_form(delta, words)
    D = N ** p
    rows, rhs = [], []
    for k in platforms:
        target = operator_of(poly, k, words)
        H = _tail_blocks(words, k, p)
        d = words.dims[k]
        for r in range(d):
            for c in range(d):
                rows.append([H[I][J][r, c] for J in range(D) for I in range(D)])
                rhs.append([target[r, c]])
    reference = closed_form_tail(delta, words.R)
    if not rows:
        return CutJoinOp(delta, p, None, D * D, platforms, reference, None, len(poly))
    A = fmpq_mat(rows)
    b = fmpq_mat(rhs)
    sol = linalg.solve_particular(A, b)
    nullity = D * D - A.rank()
    tail = None
    if sol is not None:
        # unknown index J*D + I holds tail[J, I]
        tail = TensorOp(N, p, fmpq_mat([[sol[J * D + I, 0] for I in range(D)] for J in range(D)]))
    residual = None
    if reference is not None:
        vec = fmpq_mat([[reference.mat[J, I]] for J in range(D) for I in range(D)])
        residual = linalg.max_abs(A * vec - b)
        if nullity and residual == 0:
            tail = reference  # the displayed tail lies in the solution space
    return CutJoinOp(delta, p, tail, nullity, platforms, reference, residual, len(poly))


# --------------------------------------------------------------------------
# the Leibniz action on M-words

@dataclass(frozen=True, eq=False)
class BlockOp:
    """Operator-valued matrix over p aux slots with entries B_din -> B_dout."""

    slots: int
    din: int
    dout: int
    mat: fmpq_mat

    def as_tensor(self, N: int) -> TensorOp:
        if (self.din, self.dout) != (1, 1):
            raise ValueError("entries are not scalars")
        return TensorOp(N, self.slots, self.mat)


def leibniz_action(factors, p: int, k: int, words: WordModel) -> BlockOp:
    """Act by a product of M, D copies and numeric factors on B_k.

    ``factors`` is written left to right; entries are ("M", slot),
    ("D", slot) or ("N", matrix on p slots).  The rightmost factor acts
    first; a D on B_0 gives zero (derivative of the unit).
    """
    N = words.N
    deg = k
    degs = []
    for kind, arg in reversed(list(factors)):
        if kind == "D":
            deg -= 1
        elif kind == "M":
            deg += 1
        degs.append(deg)
    if min(degs + [k]) < 0 or max(degs + [k]) > words.kmax:
        dout = words.dims[deg] if 0 <= deg <= words.kmax else 0
        return BlockOp(p, words.dims[k], dout,
                       fmpq_mat(N ** p * dout, N ** p * words.dims[k]))
    out = linalg.identity(N ** p * words.dims[k])
    deg = k
    for kind, arg in reversed(list(factors)):
        if kind == "D":
            F = words.d_block(deg, p, slot=arg)
            deg -= 1
        elif kind == "M":
            F = words.m_block(deg + 1, p, slot=arg)
            deg += 1
        else:
            mat = arg.mat if isinstance(arg, TensorOp) else arg
            F = scalar_block(mat, words.dims[deg])
        out = F * out
    return BlockOp(p, words.dims[k], words.dims[deg], out)


def platform_coefficient(W: fmpq_mat, k: int, words: WordModel) -> tuple[TensorOp | None, int]:
    """T on V^(x)k with W |> X = T X on the M-word chain, and the nullity of that system."""
    T, nullity = words.coefficient_operator(W, k)
    return (TensorOp(words.N, k, T) if T is not None else None), nullity


# --------------------------------------------------------------------------
# identities with the Casimir operators

def casimir_traces(words: WordModel, k: int, jmax: int) -> dict[str, list[fmpq_mat]]:
    """Tr_R (MD)^j on B_k by two routes.

    "direct": powers of the block M D.  "shift": MD = (I - L)/nu expanded in
    the power sums p_i(L) = Tr_R(L^i), with L the action of the RE generators.
    """
    key = ("traces", k, jmax)
    if key in words.cache:
        return words.cache[key]
    R = words.R
    d = words.dims[k]
    q, m, nu = R.q, words.trace.m, R.nu
    unit = q_int(m)(q) / q ** m
    hat = words.hat_l_block(k)
    L = words.l_block(k, 1)
    direct = [linalg.identity(d) * unit]
    psums = [linalg.identity(d) * unit]
    hp = linalg.identity(words.N * d)
    lp = linalg.identity(words.N * d)
    for _ in range(jmax):
        hp = hp * hat
        lp = lp * L
        direct.append(words.rtrace(hp, 1, d, d))
        psums.append(words.rtrace(lp, 1, d, d))
    shift = [linalg.identity(d) * unit]
    for j in range(1, jmax + 1):
        acc = fmpq_mat(d, d)
        for i in range(j + 1):
            acc += psums[i] * (fmpq(comb(j, i) * (-1) ** i) / nu ** j)
        shift.append(acc)
    out = {"direct": direct, "shift": shift, "power_sums": psums}
    words.cache[key] = out
    return out


IDENTITIES = {
    "mor1": Partition((2,)),
    "mor2": Partition((1, 1)),
    "mor3": Partition((3,)),
}


def _identity_rhs(which: str, Tj: list[fmpq_mat], q: fmpq, m: int) -> fmpq_mat:
    mq = q_int(m)(q)
    a = mq / q ** m
    T1 = Tj[1]
    if which == "mor1":
        return Tj[2] - T1 * a
    if which == "mor2":
        return T1 * T1 - T1 / q ** (2 * m)
    if which == "mor3":
        return Tj[3] - Tj[2] * (2 * a) - T1 * T1 / q ** (2 * m) \
            + T1 * (1 / q ** (4 * m) + mq ** 2 / q ** (2 * m))
    raise ValueError(f"unknown identity {which!r}")


@dataclass(frozen=True)
class IdentityReport:
    which: str
    k: int
    residual: fmpq
    route_residual: fmpq
    coefficient_residual: fmpq | None
    lhs: fmpq_mat
    rhs: fmpq_mat


def check_identity(which: str, k: int, words: WordModel, coefficient: bool = True) -> IdentityReport:
    """LHS: the normal-ordered W^Delta acting on B_k.  RHS: the stated
    combination of Tr_R (MD)^j, built through the shift from the power sums."""
    delta = IDENTITIES[which]
    q, m = words.R.q, words.trace.m
    lhs = operator_of(normal_form(delta, words), k, words)
    traces = casimir_traces(words, k, 3)
    rhs = _identity_rhs(which, traces["shift"], q, m)
    rhs_direct = _identity_rhs(which, traces["direct"], q, m)
    residual = linalg.max_abs(lhs - rhs)
    route = linalg.max_abs(rhs - rhs_direct)
    coeff = None
    if coefficient and k > 0:
        T_lhs, _ = platform_coefficient(lhs, k, words)
        T_rhs, _ = platform_coefficient(rhs, k, words)
        if T_lhs is None or T_rhs is None:
            coeff = None
        else:
            coeff = max(words.intertwines(T_lhs.mat, rhs, k), words.intertwines(T_rhs.mat, lhs, k))
    return IdentityReport(which, k, residual, route, coeff, lhs, rhs)


# --------------------------------------------------------------------------
# spectra

def wdelta_operator(delta, k: int, words: WordModel) -> fmpq_mat:
    return operator_of(normal_form(delta, words), k, words)


def wdelta_spectrum(delta, lam, words: WordModel, op: fmpq_mat | None = None) -> Character:
    """Eigenvalue of W^delta on the q-Schur element s_lambda(M) in B_k."""
    lam = Partition(lam)
    k = lam.weight
    R = words.R
    W = wdelta_operator(delta, k, words) if op is None else op
    label = "W" + str(Partition(delta))
    vals = {}
    vectors = []
    if k == 0:
        tabs = [None]
    else:
        tabs = enumerate_tableaux(lam)
    for t in tabs:
        P = fmpq_mat([[1]]) if t is None else tableau_projector(R, t).mat
        s = words.schur_vector(P, k)
        vectors.append(s)
        Ws = W * s
        c = None
        for i in range(s.nrows()):
            if s[i, 0] != 0:
                c = Ws[i, 0] / s[i, 0]
                break
        if c is None:
            vals[str(t or "")] = None
        else:
            vals[str(t or "")] = c if Ws == s * c else None
    scalar = all(v is not None for v in vals.values())
    same_vector = all(v == vectors[0] for v in vectors)
    indep = scalar and len({str(v) for v in vals.values()}) == 1 and same_vector
    value = next(iter(vals.values())) if indep else None
    failure = "" if scalar else "non-scalar restriction"
    if scalar and not indep:
        failure = "tableau mismatch"
    return Character(label, lam, value, vals, scalar, indep, "word", failure)


def commutator_report(deltas, k: int, words: WordModel) -> list[tuple[str, str, fmpq]]:
    """Max-norm of [W^a, W^b] on B_k for every pair (measured, not asserted)."""
    ops = {str(Partition(dl)): wdelta_operator(dl, k, words) for dl in deltas}
    names = list(ops)
    out = []
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            out.append((a, b, linalg.max_abs(ops[a] * ops[b] - ops[b] * ops[a])))
    return out
