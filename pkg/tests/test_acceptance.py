"""Acceptance gate: twelve criteria, each at q = 7/5, 2, 13/7, all exact.

Each criterion prints one PASS/FAIL line (collected in the terminal summary
under pytest, or printed directly with ``python tests/test_acceptance.py``).
"""

import sys
import time
from math import comb

import pytest
from flint import fmpq

from qcasimir.casimir import TRL, platform_action, jm_trace_operator
from qcasimir.suites import (RunConfig, Setting, ch_rows, classical_rows, conjecture_rows,
                             cutjoin_rows, idempotent_rows, rank_only_rows, route_rows,
                             shift_rows, spectrum_rows, tables, trace_rows)
from qcasimir.rmatrix import validate
from qcasimir.tensor import jm_family, rtrace
from qcasimir.young import antisymmetrizer

QS = (fmpq(7, 5), fmpq(2), fmpq(13, 7))
RESULTS: dict[int, str] = {}


def settings(N, max_k=4):
    cfg = RunConfig(N=N, qs=QS, max_k=max_k)
    return [Setting(cfg, q) for q in QS]


def gated(rows):
    """Failing PASS/FAIL rows, as short strings."""
    return [f"{r.suite}/{r.check} {r.params}" for r in rows if r.status == "FAIL"]


def hecke_validation():
    bad = []
    for N in (2, 3):
        for s in settings(N):
            rep = validate(s.R)
            if not rep.ok:
                bad.append(f"N={N} q={s.q}: braid {rep.braid_residual}, hecke {rep.hecke_residual}")
    return bad, "braid and Hecke residuals 0, N=2,3"


def rank_hilbert():
    bad = []
    for N in (2, 3):
        for s in settings(N):
            if s.T.rank != N:
                bad.append(f"N={N} q={s.q}: rank {s.T.rank}")
            for k in range(1, N + 2):
                r = antisymmetrizer(s.R, k).rank()
                if r != (comb(N, k) if k <= N else 0):
                    bad.append(f"N={N} q={s.q}: dim im A^({k}) = {r}")
    return bad, "rank N, dim im A^(k) = binomial(N,k), A^(N+1) = 0"


def trace_normalizations():
    bad = []
    for N in (2, 3):
        for s in settings(N):
            bad += gated(trace_rows(s, samples=20))
    return bad, "Tr_R I, Tr R_k^{-1}, ov-copy trace on 20 random X"


def idempotent_suite():
    bad = []
    for N, kmax in ((2, 4), (3, 3)):
        for s in settings(N):
            rows = idempotent_rows(s, range(1, kmax + 1))
            bad += gated(rows)
            # shapes with more than N rows first appear at k = N + 1
            if kmax > N and not any(r.check == "excess-rows-vanish" for r in rows):
                bad.append(f"N={N}: no excess-row check")
    return bad, "completeness, orthogonality, JM eigenrelations, excess rows vanish"


def jm_trace_identity():
    bad = []
    for N in (2, 3):
        for s in settings(N):
            for k in range(0, 5):
                want = jm_trace_operator(s.R, s.T, k)
                direct = rtrace(jm_family(s.R, k + 1).inv(k + 1), k + 1, s.T)
                chain = platform_action(TRL, k, s.R, s.T)
                if direct != want or chain != want:
                    bad.append(f"N={N} q={s.q} k={k}")
    return bad, "Tr_{R(k+1)} J_{k+1}^{-1} = (m_q/q^m) I - (nu/q^2m) sum J_i^{-1}, k<=4"


def spectrum_agreement():
    bad = []
    for N in (2, 3):
        for s in settings(N):
            rows = spectrum_rows(s, TRL, ks=range(0, 5))
            bad += gated(rows)
            if any(r.values["tableau_count"] < 1 for r in rows):
                bad.append("empty tableau set")
            if N == 2 and s.q == 2:
                (row,) = [r for r in rows if r.params["lambda"] == "(2,1)"]
                if row.values["eigenvalue"] != "17/128":
                    bad.append(f"(2,1) -> {row.values['eigenvalue']}")
    return bad, "trL eigenvalue = content sum = row form, lambda |- k <= 4, tableau-independent"


def cayley_hamilton():
    bad = []
    for N in (2, 3):
        for s in settings(N):
            rows = ch_rows(s, ns=range(1, 4))
            bad += gated(rows)
            if len(rows) != 3:
                bad.append(f"N={N}: only {len(rows)} rep sizes")
    return bad, "CH residual 0, n <= 3 rep slots, m = 2, 3"


def elementary_evidence():
    bad = []
    evidence, matched = 0, 0
    for N in (2, 3):
        for s in settings(N):
            rows = conjecture_rows(s)
            bad += gated(rows)
            ev = [r for r in rows if r.status == "EVIDENCE"]
            evidence += len(ev)
            matched += sum(1 for r in ev if r.values["match"])
            if N == 2 and s.q == 2:
                (row,) = [r for r in rows if r.params == {"q": "2", "j": 2, "lambda": "(2,1)"}]
                if row.values["operator"] != "1/1024" or row.values["conjectured"] != "1/1024":
                    bad.append(f"(2,1) e_2: {row.values}")
    return bad, f"e_1 rows PASS; EVIDENCE rows matching {matched}/{evidence}"


def cut_and_join():
    bad = []
    for N in (2, 3):
        for s in settings(N):
            rows = cutjoin_rows(s)
            bad += gated(rows)
            tails = {r.params["delta"]: r for r in rows if r.check == "normal-order"}
            need = ["(2)", "(1,1)", "(3)"] if N == 2 else ["(2)", "(1,1)"]
            bad += [f"N={N} missing tail {d}" for d in need if d not in tails]
            ks = {r.params["k"] for r in rows if r.check == "identity"}
            if ks != set(range(0, 4 if N == 2 else 3)):
                bad.append(f"N={N} identity platforms {sorted(ks)}")
            if N == 2 and s.q == 2:
                w1 = {r.params["lambda"]: r.values["eigenvalue"] for r in rows
                      if r.check == "spectrum" and r.params["delta"] == "(1)"}
                if (w1.get("(1)"), w1.get("()")) != ("1/16", "0"):
                    bad.append(f"W1 spectrum {w1}")
    return bad, "tails (2),(1,1),(3) match; identities k<=3 (N=2), k<=2 (N=3); W spectra"


def shifted_casimir_discrepancy():
    bad = []
    for s in settings(2):
        rows = shift_rows(s, tables(s, TRL, 0, ks=[0, 1]))
        disc = [r for r in rows if r.status == "DISCREPANCY" and r.params["lambda"] == "()"]
        bad += gated(rows)
        if len(disc) != 1:
            bad.append(f"q={s.q}: no DISCREPANCY row at empty lambda")
            continue
        v = disc[0].values
        if v["shift"] != "0" or v["operator"] != "0" or v["printed"] == "0":
            bad.append(f"q={s.q}: {v}")
    return bad, "printed row form of hat tr L nonzero at empty lambda, shift and operator 0"


def classical_limit():
    bad = []
    for N in (2, 3):
        for s in settings(N):
            bad += gated(classical_rows(s))
    return bad, "chi(mu-hat_k) at q=1 equals lambda_k + N - k"


def rank_only():
    bad = []
    for N, kmax in ((2, 3), (3, 2)):
        for s in settings(N):
            table = tables(s, TRL, kmax)
            rows = rank_only_rows(s, table, kmax) + route_rows(s, kmax)
            bad += gated(rows)
            if len(rows) < 3:
                bad.append("missing comparisons")
    return bad, "characters agree across equal-rank symmetries and realizations"


CRITERIA = [
    (1, "Hecke validation", hecke_validation, 1),
    (2, "Rank/Hilbert", rank_hilbert, 5),
    (3, "R-trace normalizations", trace_normalizations, 5),
    (4, "Idempotent suite", idempotent_suite, 30),
    (5, "Inverse JM trace identity", jm_trace_identity, 10),
    (6, "Spectrum agreement", spectrum_agreement, 60),
    (7, "Cayley-Hamilton", cayley_hamilton, 60),
    (8, "Elementary-character evidence", elementary_evidence, 60),
    (9, "Cut-and-join", cut_and_join, 90),
    (10, "Shifted-Casimir discrepancy detection", shifted_casimir_discrepancy, 5),
    (11, "Classical limit", classical_limit, 5),
    (12, "Rank-only dependence", rank_only, 30),
]


def evaluate(number, title, fn, budget):
    start = time.perf_counter()
    bad, detail = fn()
    elapsed = time.perf_counter() - start
    if elapsed > budget:
        bad = bad + [f"took {elapsed:.1f}s, budget {budget}s"]
    status = "PASS" if not bad else "FAIL"
    line = f"CRITERION {number:>2} {status}  {title}: {detail} [{elapsed:.1f}s / {budget}s]"
    if bad:
        line += "\n    " + "\n    ".join(bad[:10])
    RESULTS[number] = line
    print(line)
    return bad


@pytest.mark.parametrize("number,title,fn,budget", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, title, fn, budget):
    bad = evaluate(number, title, fn, budget)
    assert not bad, "\n".join(bad)


if __name__ == "__main__":
    failures = sum(1 for c in CRITERIA if evaluate(*c))
    sys.exit(1 if failures else 0)
