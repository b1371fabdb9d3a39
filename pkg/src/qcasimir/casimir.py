"""Central elements of the RE algebra, their operators on V^(x)k and their characters.

Two operator families are built from the same central element
``Tr_{R(1..p)}(P L_1 L_ov2 ... L_ovp)``:

* the representation side (``act_central``): L is the representation
  q^{-2n} J_{n+1} of the RE algebra on V^(x)n, copies by R-conjugation;
* the coefficient side (``platform_action``): the operator T_x with
  x |> (M_1 M_ov2 ... M_ovk) = T_x (M_1 M_ov2 ... M_ovk), where L is
  J_{k+1}^{-1} and copies are taken with R^{-1} on the left.

Both are validated independently: the representation by the RE relation,
the coefficient operator against the word model of the M-algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from flint import fmpq, fmpq_mat

from . import linalg
from .qscalar import LaurentPoly, q_int
from .rmatrix import HeckeSymmetry, TraceData
from .tensor import (DEFAULT_CAP, LocalProgram, TensorOp, check_cap, jm_family,
                     lift, to_array, to_matrix)
from .young import (IdempotentSet, Partition, StandardTableau, antisymmetrizer,
                    enumerate_tableaux, partitions, primitive_idempotents,
                    tableau_projector)

__all__ = [
    "CasimirError", "CentralExpr", "RepMatrixL", "Character", "EigenvalueSet",
    "ClosedForms", "rep_L", "act_central", "platform_action", "platform_apply",
    "jm_trace_operator", "centrality_residual", "word_residual", "action_axiom_residual",
    "character", "character_table", "eigenvalue_set", "char_closed_forms",
    "classical_limit_table", "cayley_hamilton_check", "conjecture10_check",
]


class CasimirError(ValueError):
    pass


# --------------------------------------------------------------------------
# central element descriptors

@dataclass(frozen=True)
class CentralExpr:
    """``trL``, ``e:j``, ``p:j`` or ``s:LAMBDA``."""

    tag: str
    param: int | Partition | None = None

    def __post_init__(self):
        if self.tag not in ("trL", "e", "p", "s"):
            raise ValueError(f"unknown central element tag {self.tag!r}")
        if self.tag in ("e", "p") and (not isinstance(self.param, int) or self.param < 0):
            raise ValueError(f"{self.tag} needs a nonnegative integer")
        if self.tag == "s":
            object.__setattr__(self, "param", Partition(self.param))

    @classmethod
    def parse(cls, text: str) -> CentralExpr:
        text = text.strip()
        if text in ("trL", "TrL", "tr"):
            return cls("trL")
        tag, _, arg = text.partition(":")
        if tag in ("e", "p"):
            return cls(tag, int(arg))
        if tag == "s":
            return cls("s", Partition(arg))
        raise ValueError(f"cannot parse central element {text!r}")

    @property
    def slots(self) -> int:
        if self.tag == "trL":
            return 1
        if self.tag == "s":
            return self.param.weight
        return self.param

    def label(self) -> str:
        if self.tag == "trL":
            return "trL"
        if self.tag == "s":
            return "s:" + ",".join(map(str, self.param))
        return f"{self.tag}:{self.param}"

    def projector(self, R: HeckeSymmetry) -> fmpq_mat:
        """Numeric factor on the auxiliary slots."""
        p = self.slots
        if p == 0:
            return fmpq_mat([[1]])
        if self.tag in ("trL",) or p == 1:
            return linalg.identity(R.N)
        if self.tag == "e":
            return antisymmetrizer(R, p).mat
        if self.tag == "p":
            op = TensorOp.identity(R.N, p)
            for i in range(p - 1, 0, -1):
                op = op * lift(R, i, p)
            return op.mat
        return tableau_projector(R, enumerate_tableaux(self.param)[0]).mat

    def __str__(self) -> str:
        return self.label()


TRL = CentralExpr("trL")


# --------------------------------------------------------------------------
# programs for the two operator families

def _jm_word(prog: LocalProgram, R: HeckeSymmetry, top: int, inverse: bool) -> None:
    """Append J_{top+1} (or its inverse) = R_top ... R_1 R_1 ... R_top."""
    seq = list(range(top, 0, -1)) + list(range(1, top + 1))
    for i in seq:
        prog.r(R, i, inverse)


def _chain_program(x: CentralExpr, k: int, R: HeckeSymmetry, side: str,
                   rep_op: fmpq_mat | None = None) -> LocalProgram:
    """Local program for P L_1 L_2 ... L_p over the p auxiliary slots after slot k.

    Platform side: the copies are un-copies of J_{k+1}^{-1}.  Rep side: the
    copies are ov-copies of ``rep_op``, the matrix L on slots 1..k+1.
    """
    p = x.slots
    prog = LocalProgram(R.N, k + p)
    if p == 0:
        return prog
    P = x.projector(R)
    if not (P.nrows() == R.N ** p and P == linalg.identity(R.N ** p)):
        prog.then(P, k + 1, p)
    for s in range(p):
        if side == "platform":
            for t in range(s, 0, -1):
                prog.r(R, k + t, inverse=True)
            _jm_word(prog, R, k, inverse=True)
            for t in range(1, s + 1):
                prog.r(R, k + t)
        else:
            for t in range(s, 0, -1):
                prog.r(R, k + t)
            prog.then(rep_op, 1, k + 1)
            for t in range(1, s + 1):
                prog.r(R, k + t, inverse=True)
    return prog


def _traced_apply(prog: LocalProgram, k: int, p: int, C: fmpq_mat, V: np.ndarray) -> np.ndarray:
    """Tr over the p trailing slots of (C (x) ... (x) C) prog, applied to the columns of V."""
    N = prog.N
    if p == 0:
        return V.copy()
    D = N ** p
    B = V.shape[1]
    state = np.full((N ** k, D, B, D), fmpq(0), dtype=object)
    for a in range(D):
        state[:, a, :, a] = V
    out = prog.apply(state.reshape(N ** k * D, B * D)).reshape(N ** k, D, B, D)
    Cp = C
    for _ in range(p - 1):
        Cp = linalg.kron(Cp, C)
    result = np.full((N ** k, B), fmpq(0), dtype=object)
    for beta, alpha, c in linalg.nonzeros(Cp):
        result += out[:, alpha, :, beta] * c
    return result


def _operator(x: CentralExpr, k: int, R: HeckeSymmetry, T: TraceData, side: str,
              cap: int | None, rep_op: fmpq_mat | None = None) -> TensorOp:
    check_cap(R.N, k, cap)
    if x.slots == 0:
        return TensorOp.identity(R.N, k)
    eye = np.full((R.N ** k, R.N ** k), fmpq(0), dtype=object)
    for i in range(R.N ** k):
        eye[i, i] = fmpq(1)
    prog = _chain_program(x, k, R, side, rep_op)
    return TensorOp(R.N, k, to_matrix(_traced_apply(prog, k, x.slots, T.trace_matrix, eye)))


def platform_apply(x: CentralExpr, k: int, R: HeckeSymmetry, T: TraceData,
                   V: fmpq_mat) -> fmpq_mat:
    """T_x V for a batch of column vectors on V^(x)k, without forming T_x."""
    prog = _chain_program(x, k, R, "platform")
    return to_matrix(_traced_apply(prog, k, x.slots, T.trace_matrix, to_array(V)))


def platform_action(x: CentralExpr, k: int, R: HeckeSymmetry, T: TraceData,
                    cap: int | None = DEFAULT_CAP) -> TensorOp:
    """Coefficient operator of x acting on the M-word chain of length k."""
    return _operator(x, k, R, T, "platform", cap)


def jm_trace_operator(R: HeckeSymmetry, T: TraceData, k: int) -> TensorOp:
    """(m_q / q^m) I - (nu / q^{2m}) sum_i J_i^{-1}."""
    q, m = R.q, T.m
    op = TensorOp.identity(R.N, k) * (q_int(m)(q) / q ** m)
    if k == 0:
        return op
    jm = jm_family(R, k)
    for i in range(1, k + 1):
        op = op - jm.inv(i) * (R.nu / q ** (2 * m))
    return op


# --------------------------------------------------------------------------
# the representation L on V^(x)n

@dataclass(frozen=True, eq=False)
class RepMatrixL:
    """Matrix L of the RE algebra represented on V^(x)n; slot n+1 is auxiliary."""

    n: int
    op: TensorOp
    orientation: str
    re_residual: fmpq
    attempts: dict

    def generator(self, a: int, b: int) -> TensorOp:
        """Entry L^a_b (0-based) as an operator on V^(x)n."""
        N = self.op.N
        d = N ** self.n
        out = fmpq_mat(d, d)
        for I in range(d):
            for J in range(d):
                v = self.op.mat[I * N + a, J * N + b]
                if v != 0:
                    out[I, J] = v
        return TensorOp(N, self.n, out)

    def generators(self) -> list[TensorOp]:
        N = self.op.N
        return [self.generator(a, b) for a in range(N) for b in range(N)]


def _aux_transpose(op: TensorOp) -> TensorOp:
    N = op.N
    d = N ** (op.k - 1)
    out = fmpq_mat(op.dim, op.dim)
    for r, c, v in linalg.nonzeros(op.mat):
        I, a = divmod(r, N)
        J, b = divmod(c, N)
        out[I * N + b, J * N + a] = v
    return TensorOp(N, op.k, out)


def _re_residual(op: TensorOp, R: HeckeSymmetry) -> fmpq:
    L1 = op.extend(1)
    Ra = lift(R, op.k, op.k + 1)
    return (Ra * L1 * Ra * L1 - L1 * Ra * L1 * Ra).max_abs()


def _un_extraction(R: HeckeSymmetry, n: int) -> TensorOp:
    """Generators defined by L_{un(n+1)} |> x = J_{n+1}^{-1} x on V^(x)n.

    With U = R_1 ... R_n the un-copy is U^{-1} L_1 U.  Writing Z[(c,K),(b,J)]
    for entry (K, J) of the operator of l^c_b, the action reads Z U' = (U J^{-1})',
    where ' regroups M^{bQ}_{Jj} as [(b,J),(Q,j)].  Returned with the
    auxiliary slot last, like the other candidates.
    """
    N, K = R.N, n + 1
    d = N ** n
    U = TensorOp.identity(N, K)
    for i in range(1, K):
        U = U * lift(R, i, K)
    rhs = U * jm_family(R, K).inv(K)

    def regroup(M: fmpq_mat) -> fmpq_mat:
        out = fmpq_mat(M.nrows(), M.ncols())
        for r, c, v in linalg.nonzeros(M):
            b, Q = divmod(r, d)
            J, j = divmod(c, N)
            out[b * d + J, Q * N + j] = v
        return out

    Ut = regroup(U.mat)
    if Ut.rank() < Ut.nrows():
        raise CasimirError("un-copy extraction is singular")
    Z = regroup(rhs.mat) * Ut.inv()
    out = fmpq_mat(N * d, N * d)
    for r, c, v in linalg.nonzeros(Z):
        a, I = divmod(r, d)
        b, J = divmod(c, d)
        out[I * N + a, J * N + b] = v
    return TensorOp(N, K, out)


def rep_L(R: HeckeSymmetry, n: int) -> RepMatrixL:
    """Representation of L on V^(x)n.

    Candidates built from J_{n+1}^{-1} are tried in order: row and column
    extraction over the auxiliary slot n+1, then the generators solved from
    the un-copy action L_{un(n+1)} |> x = J_{n+1}^{-1} x.  The first one
    satisfying the RE relation exactly is returned.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    base = jm_family(R, n + 1).inv(n + 1)
    builders = {
        "inverse-JM/row": lambda: base,
        "inverse-JM/column": lambda: _aux_transpose(base),
        "inverse-JM/un-copy": lambda: _un_extraction(R, n),
    }
    attempts = {}
    for label, build in builders.items():
        try:
            cand = build()
        except CasimirError as exc:
            attempts[label] = str(exc)
            continue
        res = _re_residual(cand, R)
        attempts[label] = res
        if res == 0:
            return RepMatrixL(n, cand, label, res, attempts)
    raise CasimirError(f"representation construction failed: RE residuals {attempts}")


def act_central(x: CentralExpr, n: int, R: HeckeSymmetry, T: TraceData,
                cap: int | None = DEFAULT_CAP, rep: RepMatrixL | None = None) -> TensorOp:
    """Operator of the central element x in the representation rep_L(n)."""
    rep = rep or rep_L(R, n)
    return _operator(x, n, R, T, "rep", cap, rep.op.mat)


def centrality_residual(op: TensorOp, rep: RepMatrixL) -> fmpq:
    return max((op.commutator(g).max_abs() for g in rep.generators()), default=fmpq(0))


# --------------------------------------------------------------------------
# validation of the coefficient operator against the word model

def word_residual(x: CentralExpr, k: int, R: HeckeSymmetry, T: TraceData, words) -> fmpq:
    """(T_x (x) I) X - (I (x) W_x) X on the M-word chain; words is a WordModel."""
    Tx = platform_action(x, k, R, T, cap=None)
    Wx = words.central(x.projector(R), x.slots, k)
    return words.intertwines(Tx.mat, Wx, k)


def action_axiom_residual(x: CentralExpr, y: CentralExpr, k: int, R: HeckeSymmetry,
                          T: TraceData, words) -> fmpq:
    """Acting by the product xy equals acting by y, then by x.

    On coefficients this reads T_{xy} = T_y T_x.
    """
    Tx = platform_action(x, k, R, T, cap=None)
    Ty = platform_action(y, k, R, T, cap=None)
    Wxy = words.central(x.projector(R), x.slots, k) * words.central(y.projector(R), y.slots, k)
    return words.intertwines((Ty * Tx).mat, Wxy, k)


# --------------------------------------------------------------------------
# characters

@dataclass(frozen=True)
class Character:
    expr: str
    lam: Partition
    value: fmpq | None
    per_tableau: dict
    scalar: bool
    tableau_independent: bool
    mode: str
    failure: str = ""

    @property
    def ok(self) -> bool:
        return self.scalar and self.tableau_independent


def _scalar_on(W: fmpq_mat, V: fmpq_mat) -> fmpq | None:
    """c with W = c V, or None."""
    c = None
    for i, j, v in linalg.nonzeros(V):
        c = W[i, j] / v
        break
    if c is None:
        return None
    return c if W == V * c else None


def character_table(x: CentralExpr, k: int, R: HeckeSymmetry, T: TraceData,
                    idem: IdempotentSet | None = None, full: bool | None = None,
                    cap: int | None = DEFAULT_CAP) -> dict[Partition, Character]:
    """Restriction of T_x to every im P_(lambda,a), lambda |- k.

    With ``full`` the whole image is tested; otherwise one vector per
    tableau (the first nonzero column of P).  By default the full image is
    used when N^(k + p) fits the cap.
    """
    idem = idem or primitive_idempotents(R, k, T.m)
    if full is None:
        full = cap is None or R.N ** (k + x.slots) <= cap
    columns = []
    owners = []
    for (lam, t), P in idem.items():
        cols = linalg.column_space(P.mat) if full else \
            linalg.select_columns(P.mat, linalg.nonzero_columns(P.mat)[:1])
        columns.append(cols)
        owners.append((lam, t, cols.ncols()))
    V = linalg.hstack(columns, rows=R.N ** k)
    TV = platform_apply(x, k, R, T, V) if V.ncols() else V
    out: dict[Partition, dict] = {}
    off = 0
    for (lam, t, w), cols in zip(owners, columns):
        block = fmpq_mat(R.N ** k, w)
        for i in range(R.N ** k):
            for j in range(w):
                v = TV[i, off + j]
                if v != 0:
                    block[i, j] = v
        off += w
        out.setdefault(lam, {})[t.label()] = _scalar_on(block, cols)
    table = {}
    mode = "image" if full else "vector"
    for lam, vals in out.items():
        scalar = all(v is not None for v in vals.values())
        distinct = set(str(v) for v in vals.values())
        indep = scalar and len(distinct) == 1
        value = next(iter(vals.values())) if indep else None
        failure = "" if scalar else "non-scalar restriction"
        if scalar and not indep:
            failure = "tableau mismatch"
        table[lam] = Character(x.label(), lam, value, vals, scalar, indep, mode, failure)
    return table


def character(x: CentralExpr, lam, R: HeckeSymmetry, T: TraceData, **kw) -> Character:
    lam = Partition(lam)
    if lam.rows > T.m:
        raise CasimirError(f"{lam} has more than m = {T.m} rows")
    if lam.weight == 0:
        value = platform_action(x, 0, R, T).mat[0, 0]
        return Character(x.label(), lam, value, {"": value}, True, True, "counit")
    return character_table(x, lam.weight, R, T, **kw)[lam]


# --------------------------------------------------------------------------
# closed forms

def _rows(lam: Partition, m: int) -> list[int]:
    """x_k = lambda_k + m - k for k = 1..m."""
    return [lam.part(k) + m - k for k in range(1, m + 1)]


@dataclass(frozen=True)
class EigenvalueSet:
    lam: Partition
    m: int
    mu: tuple[LaurentPoly, ...]
    mu_hat: tuple[LaurentPoly, ...]

    def consistency_defect(self) -> LaurentPoly:
        """sum_i |mu_i - (1 - nu mu_hat_i)| as a polynomial (zero when consistent)."""
        total = LaurentPoly()
        for a, b in zip(self.mu, self.mu_hat):
            diff = a - (1 - LaurentPoly.nu() * b)
            total = total + diff * diff
        return total

    def elementary(self, j: int) -> LaurentPoly:
        total = LaurentPoly()
        for combo in combinations(self.mu, j):
            term = LaurentPoly.const(1)
            for f in combo:
                term = term * f
            total = total + term
        return total


def eigenvalue_set(lam, m: int) -> EigenvalueSet:
    lam = Partition(lam)
    if lam.rows > m:
        raise CasimirError(f"{lam} has more than m = {m} rows")
    xs = _rows(lam, m)
    mu = tuple(LaurentPoly.monomial(-2 * x) for x in xs)
    mu_hat = tuple(LaurentPoly.monomial(-x) * q_int(x) for x in xs)
    return EigenvalueSet(lam, m, mu, mu_hat)


@dataclass(frozen=True)
class ClosedForms:
    lam: Partition
    m: int
    trL_contents: LaurentPoly
    trL_rows: LaurentPoly
    hat_trL: LaurentPoly
    hat_trL_printed: LaurentPoly
    eigen: EigenvalueSet

    @property
    def forms_agree(self) -> bool:
        return self.trL_contents == self.trL_rows

    @property
    def printed_matches_shift(self) -> bool:
        return self.hat_trL == self.hat_trL_printed

    def conjectured_e(self, j: int) -> LaurentPoly:
        """q^{-j} e_j(chi(mu_1), ..., chi(mu_m))."""
        return LaurentPoly.monomial(-j) * self.eigen.elementary(j)


def char_closed_forms(lam, m: int) -> ClosedForms:
    lam = Partition(lam)
    if lam.rows > m:
        raise CasimirError(f"{lam} has more than m = {m} rows")
    nu = LaurentPoly.nu()
    unit = q_int(m) * LaurentPoly.monomial(-m)
    box_sum = LaurentPoly()
    for c in lam.contents():
        box_sum = box_sum + LaurentPoly.monomial(-2 * c)
    contents = unit - nu * LaurentPoly.monomial(-2 * m) * box_sum
    rows = LaurentPoly()
    for x in _rows(lam, m):
        rows = rows + LaurentPoly.monomial(-2 * x - 1)
    hat = (unit - rows).exact_div(nu)
    printed = LaurentPoly()
    for x in _rows(lam, m):
        printed = printed + LaurentPoly.monomial(-x - 2 * m) * q_int(x)
    return ClosedForms(lam, m, contents, rows, hat, printed, eigenvalue_set(lam, m))


def classical_limit_table(lam, N: int) -> list[int]:
    """chi_lambda(mu_hat_k) at q = 1 for k = 1..N."""
    eig = eigenvalue_set(lam, N)
    return [int(p(1)) for p in eig.mu_hat]


# --------------------------------------------------------------------------
# Cayley-Hamilton and the eigenvalue conjecture

@dataclass(frozen=True)
class CHReport:
    n: int
    m: int
    residual: fmpq
    centrality: fmpq
    re_residual: fmpq


def cayley_hamilton_check(R: HeckeSymmetry, T: TraceData, n: int, m: int | None = None,
                          cap: int | None = None) -> CHReport:
    """sum_{j=0..m} (-q)^j e_j(L) L^{m-j} on V^(x)n (x) V."""
    m = T.m if m is None else m
    rep = rep_L(R, n)
    L = rep.op
    powers = [TensorOp.identity(R.N, n + 1)]
    for _ in range(m):
        powers.append(powers[-1] * L)
    total = TensorOp.zero(R.N, n + 1)
    central = fmpq(0)
    for j in range(m + 1):
        e = act_central(CentralExpr("e", j), n, R, T, cap=cap, rep=rep)
        central = max(central, centrality_residual(e, rep))
        total = total + e.extend(1) * powers[m - j] * (-R.q) ** j
    return CHReport(n, m, total.max_abs(), central, rep.re_residual)


@dataclass(frozen=True)
class ConjectureRow:
    lam: Partition
    j: int
    operator_value: fmpq | None
    conjectured: fmpq
    match: bool
    proved: bool


def conjecture10_check(R: HeckeSymmetry, T: TraceData, ks=range(1, 5),
                       js=None, cap: int | None = DEFAULT_CAP) -> list[ConjectureRow]:
    """Operator-path chi(e_j) against q^{-j} e_j(chi(mu)) for every lambda |- k."""
    m = T.m
    js = list(range(1, m + 1)) if js is None else list(js)
    rows = []
    for j in js:
        x = CentralExpr("e", j)
        for k in ks:
            table = character_table(x, k, R, T, cap=cap) if k else \
                {Partition(): character(x, (), R, T)}
            for lam in partitions(k, max_rows=m) if k else [Partition()]:
                ch = table[lam]
                want = char_closed_forms(lam, m).conjectured_e(j)(R.q)
                rows.append(ConjectureRow(lam, j, ch.value, want,
                                          ch.ok and ch.value == want, j == 1))
    return rows
