"""Check suites shared by the command line and the acceptance tests.

Every suite returns a list of :class:`Row`.  Only PASS/FAIL rows gate the
exit status; EVIDENCE (conjectural), DISCREPANCY (printed formula that
disagrees with the computed value), UNANCHORED and INFO rows are reported
but never gate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb

import numpy as np
from flint import fmpq, fmpq_mat

from . import linalg
from .casimir import (TRL, CentralExpr, act_central, action_axiom_residual,
                      cayley_hamilton_check, char_closed_forms, character,
                      character_table, classical_limit_table, conjecture10_check,
                      jm_trace_operator, rep_L, centrality_residual, word_residual)
from .cutjoin import (IDENTITIES, check_identity, commutator_report, leibniz_action,
                      normal_order, wdelta_operator, wdelta_spectrum)
from .qscalar import LaurentPoly, QContext, as_rational, q_int
from .rmatrix import (HeckeSymmetry, RMatrixError, TraceData, build_multiparameter,
                      build_standard, conjugate, load_rmatrix, trace_data, validate)
from .tensor import DEFAULT_CAP, TensorOp, copy_over, jm_family, lift, lift_op, rtrace
from .words import WordModel
from .young import (Partition, antisymmetrizer, enumerate_tableaux, hook_count,
                    partitions, primitive_idempotents, tableau_projector)

__all__ = [
    "SUITES", "GATING", "DEFAULT_QS", "Row", "RunConfig", "Setting",
    "make_symmetry", "run_suite", "summarize", "tables",
    "braid_rows", "trace_rows", "idempotent_rows", "prop_action_rows", "spectrum_rows",
    "shift_rows", "rank_only_rows", "route_rows", "spectrum_suite", "ch_rows",
    "conjecture_rows", "cutjoin_rows", "classical_rows",
]

SUITES = ("braid", "trace", "idempotents", "prop-action", "spectrum", "ch",
          "conjecture10", "cutjoin", "classical")
GATING = ("PASS", "FAIL")
STATUSES = ("PASS", "FAIL", "EVIDENCE", "DISCREPANCY", "UNANCHORED", "INFO")
DEFAULT_QS = (fmpq(7, 5), fmpq(2), fmpq(13, 7))
PRESETS = ("standard", "multiparameter")


def text(x) -> str | None:
    """Canonical lossless text of an exact value."""
    if x is None:
        return None
    if isinstance(x, (fmpq, int)):
        return str(fmpq(x))
    if isinstance(x, LaurentPoly):
        return str(x)
    if isinstance(x, Partition):
        return str(x)
    return str(x)


def verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


@dataclass
class Row:
    suite: str
    check: str
    params: dict
    values: dict
    status: str

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "check": self.check,
            "params": self.params,
            "values": self.values,
            "status": self.status,
        }


@dataclass(frozen=True)
class RunConfig:
    preset: str = "standard"
    file: str | None = None
    N: int = 2
    qs: tuple = DEFAULT_QS
    max_k: int = 4
    suites: tuple = SUITES
    cap: int = DEFAULT_CAP
    out: str | None = None

    def __post_init__(self):
        if not self.qs:
            raise ValueError("at least one q value is required")
        for q in self.qs:
            QContext(as_rational(q))  # genericity guard
        if self.file is None and self.preset not in PRESETS:
            raise ValueError(f"unknown preset {self.preset!r} (choose from {', '.join(PRESETS)})")
        if self.max_k < 0:
            raise ValueError("max-k must be nonnegative")

    def echo(self) -> dict:
        return {
            "preset": None if self.file else self.preset,
            "file": self.file,
            "N": self.N,
            "q": [text(as_rational(q)) for q in self.qs],
            "max_k": self.max_k,
            "suites": list(self.suites),
            "cap": self.cap,
        }


def _twist(N: int) -> dict:
    """Fixed multiparameter twist used for the second configuration of equal rank."""
    values = [fmpq(3, 5), fmpq(7), fmpq(1, 2), fmpq(5, 3), fmpq(2, 9), fmpq(4)]
    pairs = [(i, j) for i in range(1, N + 1) for j in range(i + 1, N + 1)]
    return {pair: values[n % len(values)] for n, pair in enumerate(pairs)}


def make_symmetry(cfg: RunConfig, ctx: QContext) -> HeckeSymmetry:
    if cfg.file is not None:
        return load_rmatrix(cfg.file, ctx)
    if cfg.preset == "standard":
        return build_standard(cfg.N, ctx)
    return build_multiparameter(cfg.N, ctx, _twist(cfg.N))


def _conjugator(N: int) -> fmpq_mat:
    """Upper unitriangular change of basis with small rational entries."""
    g = linalg.identity(N)
    for i in range(N):
        for j in range(i + 1, N):
            g[i, j] = fmpq(i + 2 * j + 1, j + 2)
    return g


class Setting:
    """One configured symmetry at one q, with lazily built shared data."""

    def __init__(self, cfg: RunConfig, q, word_k: int | None = None):
        self.cfg = cfg
        self.word_k = word_k
        self.ctx = QContext(as_rational(q))
        self.R = make_symmetry(cfg, self.ctx)
        self.q = self.ctx.q

    @property
    def qtext(self) -> str:
        return text(self.q)

    @cached_property
    def T(self) -> TraceData:
        return trace_data(self.R)

    @property
    def m(self) -> int:
        return self.T.m

    @property
    def kmax(self) -> int:
        """Largest platform length within the size cap."""
        k = 0
        while k < self.cfg.max_k and self.R.N ** (k + 1) <= self.cfg.cap:
            k += 1
        return k

    @property
    def word_kmax(self) -> int:
        """Platforms for the word model: 3 for N = 2, 2 for N = 3, 1 beyond, unless set."""
        if self.word_k is not None:
            return self.word_k
        limit = {1: 4, 2: 3, 3: 2}.get(self.R.N, 1)
        return min(self.kmax, limit)

    @cached_property
    def words(self) -> WordModel:
        return WordModel(self.R, self.T, self.word_kmax)

    def row(self, suite: str, check: str, params: dict, values: dict, status: str) -> Row:
        return Row(suite, check, {"q": self.qtext, **params}, values, status)


# --------------------------------------------------------------------------
# braid / trace

def braid_rows(s: Setting) -> list[Row]:
    rep = validate(s.R)
    return [s.row("braid", "hecke-symmetry", {"N": s.R.N},
                  {"braid_residual": text(rep.braid_residual),
                   "hecke_residual": text(rep.hecke_residual)}, verdict(rep.ok))]


def _random_matrix(rng: np.random.Generator, n: int) -> fmpq_mat:
    nums = rng.integers(-9, 10, size=(n, n))
    dens = rng.integers(1, 8, size=(n, n))
    return fmpq_mat([[fmpq(int(a), int(b)) for a, b in zip(r1, r2)] for r1, r2 in zip(nums, dens)])


def trace_rows(s: Setting, samples: int = 20, seed: int = 2024) -> list[Row]:
    R, N = s.R, s.R.N
    rows = []
    try:
        T = s.T
    except RMatrixError as exc:
        return [s.row("trace", "trace-data", {}, {"error": str(exc)}, "FAIL")]
    m, q = T.m, s.q
    known = s.cfg.file is None
    ranks = []
    for k in range(1, m + 2):
        if N ** k > s.cfg.cap:
            break
        ranks.append(antisymmetrizer(R, k).rank())
    expected = [comb(N, k) for k in range(1, len(ranks) + 1)]
    ok = ranks == expected and m == N if known else ranks == list(T.hilbert[1:]) + [0]
    rows.append(s.row("trace", "rank", {"N": N},
                      {"rank": m, "hilbert": list(T.hilbert), "antisymmetrizer_ranks": ranks,
                       "pairing": T.pairing, "traced_slot": T.traced_slot},
                      verdict(ok)))
    unit = q_int(m)(q) / q ** m
    tr = T.rtrace_scalar(linalg.identity(N))
    rows.append(s.row("trace", "trace-unit", {"m": m},
                      {"value": text(tr), "expected": text(unit)}, verdict(tr == unit)))
    for k in range(1, 3):
        if N ** (k + 1) > s.cfg.cap:
            break
        plus = rtrace(lift(R, k, k + 1), k + 1, T)
        minus = rtrace(lift(R, k, k + 1, inverse=True), k + 1, T)
        eye = TensorOp.identity(N, k)
        r1 = (plus - eye).max_abs()
        r2 = (minus - eye / q ** (2 * m)).max_abs()
        rows.append(s.row("trace", "trace-R", {"k": k},
                          {"residual_R": text(r1), "residual_Rinv": text(r2)},
                          verdict(r1 == 0 and r2 == 0)))
    rng = np.random.default_rng(seed)
    worst = fmpq(0)
    for n in range(samples):
        k = 2 + n % 2
        if N ** k > s.cfg.cap:
            k = 2
        X = _random_matrix(rng, N)
        Xk = copy_over(lift_op(X, N, 1, 1, k), R, k)
        lhs = rtrace(Xk, k, T)
        worst = max(worst, (lhs - TensorOp.identity(N, k - 1) * T.rtrace_scalar(X)).max_abs())
    rows.append(s.row("trace", "trace-copy", {"samples": samples, "seed": seed},
                      {"residual": text(worst)}, verdict(worst == 0)))
    return rows


# --------------------------------------------------------------------------
# idempotents

def idempotent_rows(s: Setting, ks=None) -> list[Row]:
    R, m = s.R, s.m
    ks = range(1, s.kmax + 1) if ks is None else ks
    rows = []
    for k in ks:
        idem = primitive_idempotents(R, k, m)
        res = idem.residuals(s.q)
        counts = {str(lam): len(idem.for_shape(lam)) for lam in idem.shapes()}
        count_ok = all(n == hook_count(lam) for lam, n in
                       ((lam, len(idem.for_shape(lam))) for lam in idem.shapes()))
        ok = all(v == 0 for v in res.values()) and count_ok
        rows.append(s.row("idempotents", "idempotent-set", {"k": k},
                          {**{key: text(v) for key, v in res.items()}, "tableaux": counts},
                          verdict(ok)))
        tall = [lam for lam in partitions(k) if lam.rows > m]
        if tall:
            jm = idem.jm
            worst = fmpq(0)
            for lam in tall:
                for t in enumerate_tableaux(lam):
                    worst = max(worst, tableau_projector(R, t, jm).max_abs())
            rows.append(s.row("idempotents", "excess-rows-vanish", {"k": k},
                              {"shapes": [str(lam) for lam in tall], "max_entry": text(worst)},
                              verdict(worst == 0)))
    return rows


# --------------------------------------------------------------------------
# tr L action, representation and word-model consistency

def prop_action_rows(s: Setting) -> list[Row]:
    R, T = s.R, s.T
    rows = []
    for k in range(0, s.kmax + 1):
        expected = jm_trace_operator(R, T, k)
        jm = jm_family(R, k + 1)
        direct = rtrace(jm.inv(k + 1), k + 1, T)
        chain = TensorOp(R.N, k, _platform(TRL, k, s).mat)
        r1 = (direct - expected).max_abs()
        r2 = (chain - expected).max_abs()
        rows.append(s.row("prop-action", "trace-inverse-jm", {"k": k},
                          {"residual": text(r1), "chain_residual": text(r2)},
                          verdict(r1 == 0 and r2 == 0)))
    for n in range(1, min(3, s.kmax) + 1):
        if s.R.N ** (n + 1) > s.cfg.cap:
            break
        rep = rep_L(R, n)
        e1 = act_central(CentralExpr("e", 1), n, R, T, cap=s.cfg.cap, rep=rep)
        cent = centrality_residual(e1, rep)
        closed_gap = (act_central(TRL, n, R, T, cap=s.cfg.cap, rep=rep) - jm_trace_operator(R, T, n)).max_abs()
        rows.append(s.row("prop-action", "rep-re-relation", {"n": n},
                          {"orientation": rep.orientation, "re_residual": text(rep.re_residual),
                           "rejected": {k: text(v) for k, v in rep.attempts.items() if v != 0},
                           "centrality_e1": text(cent), "trL_vs_closed_form": text(closed_gap)},
                          verdict(rep.re_residual == 0 and cent == 0 and closed_gap == 0)))
    exprs = [TRL] + [CentralExpr("e", j) for j in range(1, min(2, s.m) + 1)] + [CentralExpr("p", 2)]
    for k in range(1, s.word_kmax + 1):
        worst = fmpq(0)
        for x in exprs:
            worst = max(worst, word_residual(x, k, R, T, s.words))
        ax = action_axiom_residual(TRL, CentralExpr("e", 1), k, R, T, s.words)
        rows.append(s.row("prop-action", "word-model", {"k": k},
                          {"exprs": [x.label() for x in exprs], "intertwining_residual": text(worst),
                           "action_axiom_residual": text(ax)},
                          verdict(worst == 0 and ax == 0)))
    return rows


def _platform(x: CentralExpr, k: int, s: Setting):
    from .casimir import platform_action
    return platform_action(x, k, s.R, s.T, cap=s.cfg.cap)


# --------------------------------------------------------------------------
# spectra

def tables(s: Setting, x: CentralExpr, kmax: int, R=None, T=None, ks=None) -> dict:
    R = R or s.R
    T = T or s.T
    ks = range(0, kmax + 1) if ks is None else ks
    out = {}
    for k in ks:
        if k == 0:
            out[Partition()] = character(x, (), R, T)
        else:
            out.update(character_table(x, k, R, T, cap=s.cfg.cap))
    return out


def spectrum_rows(s: Setting, x: CentralExpr = TRL, ks=None) -> list[Row]:
    """Eigenvalue rows {expr, lambda, tableau_count, eigenvalue, closed_form, match}."""
    m, q = s.m, s.q
    rows = []
    for lam, ch in tables(s, x, s.kmax, ks=ks).items():
        forms = char_closed_forms(lam, m)
        if x == TRL:
            closed = forms.trL_rows(q)
            contents = forms.trL_contents(q)
            match = ch.ok and ch.value == closed == contents
            status = verdict(match)
            extra = {"content_form": text(contents)}
        elif x.tag == "e":
            closed = forms.conjectured_e(x.param)(q)
            match = ch.ok and ch.value == closed
            status = verdict(match) if x.param <= 1 else "EVIDENCE"
            extra = {}
        else:
            closed, match, extra = None, None, {}
            status = verdict(ch.ok)
        rows.append(s.row("spectrum", "character", {"expr": x.label(), "lambda": str(lam)},
                          {"expr": x.label(), "lambda": str(lam),
                           "tableau_count": len(ch.per_tableau), "eigenvalue": text(ch.value),
                           "closed_form": text(closed), "match": match, "mode": ch.mode,
                           "failure": ch.failure or None, **extra},
                          status))
    return rows


def shift_rows(s: Setting, table: dict) -> list[Row]:
    """Character of Tr_R hat-L from the shift, against the printed closed form."""
    m, q = s.m, s.q
    unit = q_int(m)(q) / q ** m
    rows = []
    for lam, ch in table.items():
        forms = char_closed_forms(lam, m)
        operator = None if ch.value is None else (unit - ch.value) / s.R.nu
        shift = forms.hat_trL(q)
        printed = forms.hat_trL_printed(q)
        rows.append(s.row("spectrum", "hat-trL-shift", {"lambda": str(lam)},
                          {"operator": text(operator), "shift": text(shift)},
                          verdict(operator == shift)))
        if printed != shift:
            rows.append(s.row("spectrum", "hat-trL-printed", {"lambda": str(lam)},
                              {"printed": text(printed), "shift": text(shift),
                               "operator": text(operator),
                               "printed_form": text(forms.hat_trL_printed),
                               "shift_form": text(forms.hat_trL)},
                              "DISCREPANCY"))
    return rows


def rank_only_rows(s: Setting, table: dict, kmax: int) -> list[Row]:
    """Characters of trL and e:2 for two other admissible symmetries of equal rank."""
    R = s.R
    others = {
        "conjugated": conjugate(R, _conjugator(R.N)),
        "multiparameter": build_multiparameter(R.N, s.ctx, _twist(R.N)) if s.cfg.preset == "standard"
        else build_standard(R.N, s.ctx),
    }
    rows = []
    exprs = [TRL] + ([CentralExpr("e", 2)] if s.m >= 2 else [])
    for name, other in others.items():
        T2 = trace_data(other)
        mismatches = []
        for x in exprs:
            mine = table if x == TRL else tables(s, x, kmax)
            theirs = tables(s, x, kmax, other, T2)
            for lam, ch in mine.items():
                if not (ch.ok and theirs[lam].ok and ch.value == theirs[lam].value):
                    mismatches.append(f"{x.label()} {lam}")
        rows.append(s.row("spectrum", "rank-only", {"other": name, "kmax": kmax},
                          {"rank": s.m, "other_rank": T2.m, "mismatches": mismatches},
                          verdict(T2.m == s.m and not mismatches)))
    return rows


def route_rows(s: Setting, kmax: int) -> list[Row]:
    """Characters from the representation side equal those of the platform side."""
    R, T = s.R, s.T
    rows = []
    for x in [TRL] + ([CentralExpr("e", 2)] if s.m >= 2 else []):
        mismatches = []
        for n in range(1, kmax + 1):
            rep = rep_L(R, n)
            op = act_central(x, n, R, T, cap=s.cfg.cap, rep=rep).mat
            table = character_table(x, n, R, T, cap=s.cfg.cap)
            for (lam, t), P in primitive_idempotents(R, n, s.m).items():
                A = op * P.mat
                c = table[lam].value
                if c is None or A != P.mat * c:
                    mismatches.append(f"{lam} {t.label()}")
        rows.append(s.row("spectrum", "rep-vs-platform", {"expr": x.label(), "kmax": kmax},
                          {"mismatches": mismatches}, verdict(not mismatches)))
    return rows


def spectrum_suite(s: Setting) -> list[Row]:
    rows = spectrum_rows(s, TRL)
    table = tables(s, TRL, s.kmax)
    rows += shift_rows(s, table)
    small = min(s.kmax, 3 if s.R.N == 2 else 2)
    rows += route_rows(s, small)
    rows += rank_only_rows(s, {lam: ch for lam, ch in table.items() if lam.weight <= small}, small)
    return rows


# --------------------------------------------------------------------------
# Cayley-Hamilton and the elementary-character conjecture

def ch_rows(s: Setting, ns=None) -> list[Row]:
    ns = range(1, min(3, s.kmax) + 1) if ns is None else ns
    rows = []
    for n in ns:
        if s.R.N ** (n + 1) > s.cfg.cap:
            break
        rep = cayley_hamilton_check(s.R, s.T, n, cap=s.cfg.cap)
        ok = rep.residual == 0 and rep.centrality == 0 and rep.re_residual == 0
        rows.append(s.row("ch", "cayley-hamilton", {"n": n, "m": rep.m},
                          {"residual": text(rep.residual), "centrality": text(rep.centrality),
                           "re_residual": text(rep.re_residual)}, verdict(ok)))
    return rows


def conjecture_rows(s: Setting) -> list[Row]:
    rows = []
    for r in conjecture10_check(s.R, s.T, ks=range(0, s.kmax + 1), cap=s.cfg.cap):
        status = verdict(r.match) if r.proved else "EVIDENCE"
        rows.append(s.row("conjecture10", "elementary-character", {"j": r.j, "lambda": str(r.lam)},
                          {"operator": text(r.operator_value), "conjectured": text(r.conjectured),
                           "match": r.match, "proved": r.proved}, status))
    return rows


# --------------------------------------------------------------------------
# cut-and-join

def _trace_power_characters(s: Setting, kmax: int) -> dict:
    """chi_lambda(Tr_R hat-L^j) for j <= 3 from the power-sum characters via the shift."""
    m, q, nu = s.m, s.q, s.R.nu
    unit = q_int(m)(q) / q ** m
    psums = {0: None}
    for i in range(1, 4):
        psums[i] = tables(s, CentralExpr("p", i), kmax) if i <= kmax or i == 1 else None
    out = {}
    for lam in psums[1]:
        vals = [unit]
        for j in range(1, 4):
            acc = fmpq(0)
            ok = True
            for i in range(j + 1):
                if i == 0:
                    p = unit
                elif psums[i] is None or lam not in psums[i] or psums[i][lam].value is None:
                    ok = False
                    break
                else:
                    p = psums[i][lam].value
                acc += p * comb(j, i) * (-1) ** i
            vals.append(acc / nu ** j if ok else None)
        out[lam] = vals
    return out


def _wdelta_expected(delta: Partition, vals: list, q: fmpq, m: int):
    if any(v is None for v in vals[:delta.weight + 1]):
        return None
    mq = q_int(m)(q)
    a = mq / q ** m
    T1 = vals[1]
    if delta == Partition((1,)):
        return T1
    if delta == Partition((2,)):
        return vals[2] - a * T1
    if delta == Partition((1, 1)):
        return T1 * T1 - T1 / q ** (2 * m)
    if delta == Partition((3,)):
        return vals[3] - 2 * a * vals[2] - T1 * T1 / q ** (2 * m) \
            + T1 * (1 / q ** (4 * m) + mq ** 2 / q ** (2 * m))
    return None


def cutjoin_rows(s: Setting, deltas=None, ks=None, spectra: bool = True,
                 lambdas=None) -> list[Row]:
    words = s.words
    kmax = words.kmax
    R = s.R
    deltas = [Partition(d) for d in (deltas or [(1,), (2,), (1, 1), (3,)])]
    rows = []
    for delta in deltas:
        if delta.weight > kmax:
            continue
        op = normal_order(delta, words)
        values = {"slots": op.slots, "nullity": op.nullity,
                  "platforms": list(op.platforms), "reference_residual": text(op.reference_residual),
                  "tail": None if op.tail is None else [[text(op.tail.mat[i, j])
                                                        for j in range(op.tail.dim)]
                                                       for i in range(op.tail.dim)]}
        status = verdict(op.matches_closed_form) if op.anchored else "UNANCHORED"
        rows.append(s.row("cutjoin", "normal-order", {"delta": str(delta)}, values, status))
    for which, delta in IDENTITIES.items():
        if delta not in deltas:
            continue
        for k in (range(0, kmax + 1) if ks is None else ks):
            rep = check_identity(which, k, words)
            ok = rep.residual == 0 and rep.route_residual == 0 and rep.coefficient_residual in (None, 0)
            values = {"residual_max": text(rep.residual), "route_residual": text(rep.route_residual),
                      "coefficient_residual": text(rep.coefficient_residual)}
            rows.append(s.row("cutjoin", "identity", {"which": which, "delta": str(delta), "k": k},
                              values, verdict(ok)))
    if not spectra:
        return rows
    expected = _trace_power_characters(s, kmax)
    for delta in deltas:
        if delta.weight > kmax:
            continue
        for k in range(0, kmax + 1):
            W = wdelta_operator(delta, k, words)
            for lam in (partitions(k, max_rows=s.m) if k else [Partition()]):
                if lambdas is not None and lam not in lambdas:
                    continue
                ch = wdelta_spectrum(delta, lam, words, op=W)
                want = _wdelta_expected(delta, expected.get(lam, [None] * 4), s.q, s.m)
                if want is None:
                    status = "UNANCHORED" if ch.ok else "FAIL"
                else:
                    status = verdict(ch.ok and ch.value == want)
                rows.append(s.row("cutjoin", "spectrum", {"delta": str(delta), "lambda": str(lam)},
                                  {"delta": str(delta), "k": k, "lambda": str(lam),
                                   "eigenvalue": text(ch.value), "expected": text(want),
                                   "failure": ch.failure or None}, status))
    if lambdas is None and deltas == [Partition(d) for d in [(1,), (2,), (1, 1), (3,)]]:
        rows += _leibniz_rows(s)
        k = min(2, kmax)
        for a, b, v in commutator_report([(1,), (2,), (1, 1)], k, words):
            rows.append(s.row("cutjoin", "commutator", {"a": a, "b": b, "k": k},
                              {"max_abs": text(v)}, "INFO"))
    return rows


def _leibniz_rows(s: Setting) -> list[Row]:
    words, R, N = s.words, s.R, s.R.N
    unit = leibniz_action([("D", 1), ("N", R.matrix), ("M", 1)], 2, 0, words)
    r1 = linalg.max_abs(unit.as_tensor(N).mat - linalg.identity(N * N))
    dead = leibniz_action([("D", 1)], 1, 0, words)
    zero = dead.mat.nrows() == 0 or linalg.is_zero(dead.mat)
    return [
        s.row("cutjoin", "leibniz-unit", {}, {"residual": text(r1)}, verdict(r1 == 0)),
        s.row("cutjoin", "derivative-of-unit", {}, {"zero": zero}, verdict(zero)),
    ]


# --------------------------------------------------------------------------
# classical limit

def classical_rows(s: Setting) -> list[Row]:
    N = s.R.N
    rows = []
    bad, agree, consistent = [], True, True
    for k in range(0, s.kmax + 1):
        for lam in (partitions(k, max_rows=N) if k else [Partition()]):
            got = classical_limit_table(lam, N)
            want = [lam.part(i) + N - i for i in range(1, N + 1)]
            if got != want:
                bad.append(str(lam))
            forms = char_closed_forms(lam, N)
            agree = agree and forms.forms_agree and forms.trL_contents(s.q) == forms.trL_rows(s.q)
            consistent = consistent and forms.eigen.consistency_defect().is_zero()
    rows.append(s.row("classical", "classical-limit", {"N": N, "kmax": s.kmax},
                      {"mismatches": bad}, verdict(not bad)))
    rows.append(s.row("classical", "closed-forms-agree", {"N": N, "kmax": s.kmax},
                      {"content_equals_rows": agree, "mu_shift_consistent": consistent},
                      verdict(agree and consistent)))
    return rows


RUNNERS = {
    "braid": braid_rows,
    "trace": trace_rows,
    "idempotents": idempotent_rows,
    "prop-action": prop_action_rows,
    "spectrum": spectrum_suite,
    "ch": ch_rows,
    "conjecture10": conjecture_rows,
    "cutjoin": cutjoin_rows,
    "classical": classical_rows,
}


def run_suite(name: str, s: Setting) -> list[Row]:
    return RUNNERS[name](s)


def summarize(rows: list[Row]) -> dict:
    counts = {status: 0 for status in STATUSES}
    for r in rows:
        counts[r.status] += 1
    evidence_mismatch = sum(1 for r in rows if r.status == "EVIDENCE" and not r.values.get("match"))
    return {**counts, "evidence_mismatch": evidence_mismatch, "ok": counts["FAIL"] == 0}
