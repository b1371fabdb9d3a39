"""Hecke symmetries: construction, ingestion, validation, R-trace data."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from flint import fmpq, fmpq_mat

from . import linalg
from .qscalar import QContext, ScalarSyntaxError, as_rational, parse_scalar

__all__ = [
    "HeckeSymmetry", "ValidationReport", "TraceData", "RMatrixError",
    "build_standard", "build_multiparameter", "conjugate", "load_rmatrix",
    "dump_rmatrix", "validate", "skew_inverse", "trace_data",
]


class RMatrixError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HeckeSymmetry:
    """Braid-form operator on V (x) V, ``dim V = N``.

    ``matrix[(i, j), (k, l)]`` is the coefficient of ``v_i (x) v_j`` in
    ``R(v_k (x) v_l)``; pairs are flattened as ``i * N + j``.
    """

    N: int
    matrix: fmpq_mat
    ctx: QContext
    name: str = "custom"

    def __post_init__(self):
        n2 = self.N * self.N
        if self.matrix.nrows() != n2 or self.matrix.ncols() != n2:
            raise RMatrixError(f"R must be {n2}x{n2} for N = {self.N}")

    @property
    def q(self) -> fmpq:
        return self.ctx.q

    @property
    def nu(self) -> fmpq:
        return self.ctx.nu

    @cached_property
    def inverse(self) -> fmpq_mat:
        return self.matrix.inv()

    def entry(self, i: int, j: int, k: int, l: int) -> fmpq:
        N = self.N
        return self.matrix[i * N + j, k * N + l]

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeSymmetry):
            return NotImplemented
        return self.N == other.N and self.q == other.q and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.N, str(self.q), tuple(str(x) for x in self.matrix.entries())))


def build_standard(N: int, ctx: QContext) -> HeckeSymmetry:
    """Drinfeld-Jimbo symmetry of U_q(sl(N)) in braid form.

    R(v_i v_i) = q v_i v_i;  R(v_i v_j) = v_j v_i + nu v_i v_j for i < j;
    R(v_i v_j) = v_j v_i for i > j.
    """
    if N < 1:
        raise ValueError("N must be positive")
    m = fmpq_mat(N * N, N * N)
    for i in range(N):
        for j in range(N):
            col = i * N + j
            if i == j:
                m[col, col] = ctx.q
            else:
                m[j * N + i, col] = 1
                if i < j:
                    m[col, col] = ctx.nu
    return HeckeSymmetry(N, m, ctx, name=f"standard-{N}")


def build_multiparameter(N: int, ctx: QContext, twist: dict[tuple[int, int], object]) -> HeckeSymmetry:
    """Standard symmetry twisted by ``R(v_i v_j) -> p_ij v_j v_i`` on the swap part.

    ``twist`` gives ``p_ij`` for ``i < j`` (1-based); ``p_ji = 1/p_ij``.
    Used to produce admissible symmetries of equal rank that are not the
    standard preset.
    """
    base = build_standard(N, ctx).matrix
    m = fmpq_mat(base.nrows(), base.ncols())
    for r, c, v in linalg.nonzeros(base):
        m[r, c] = v
    for (i, j), p in twist.items():
        if not 1 <= i < j <= N:
            raise ValueError("twist keys must satisfy 1 <= i < j <= N")
        p = as_rational(p)
        a, b = i - 1, j - 1
        m[b * N + a, a * N + b] = p
        m[a * N + b, b * N + a] = 1 / p
    return HeckeSymmetry(N, m, ctx, name=f"multiparameter-{N}")


def conjugate(R: HeckeSymmetry, g: fmpq_mat, name: str | None = None) -> HeckeSymmetry:
    """``(g (x) g) R (g (x) g)^{-1}`` for an invertible N x N matrix ``g``."""
    gg = linalg.kron(g, g)
    return HeckeSymmetry(R.N, gg * R.matrix * gg.inv(), R.ctx, name=name or f"{R.name}-conj")


# --------------------------------------------------------------------------
# R-matrix documents

def load_rmatrix(source, ctx: QContext) -> HeckeSymmetry:
    """Load an R-matrix document (path, JSON text, or already-parsed dict).

    Entries are evaluated at ``ctx.q``; the result is not validated.
    """
    if isinstance(source, dict):
        doc = source
        label = "document"
    else:
        path = Path(source)
        if isinstance(source, Path) or (isinstance(source, str) and path.exists()):
            text = path.read_text()
            label = path.stem
        else:
            text = str(source)
            label = "document"
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise RMatrixError(f"malformed R-matrix document: {exc}") from exc
    if not isinstance(doc, dict) or "dim" not in doc or "entries" not in doc:
        raise RMatrixError("R-matrix document needs 'dim' and 'entries'")
    if doc.get("convention", "braid") != "braid":
        raise RMatrixError(f"unsupported convention {doc.get('convention')!r}")
    N = doc["dim"]
    if not isinstance(N, int) or N < 1:
        raise RMatrixError("'dim' must be a positive integer")
    m = fmpq_mat(N * N, N * N)
    seen = set()
    for pos, e in enumerate(doc["entries"]):
        try:
            (i, j), (k, l) = e["out"], e["in"]
        except (KeyError, TypeError, ValueError) as exc:
            raise RMatrixError(f"entry {pos}: needs 'out' and 'in' index pairs") from exc
        for idx in (i, j, k, l):
            if not isinstance(idx, int) or not 1 <= idx <= N:
                raise RMatrixError(f"entry {pos}: index {idx!r} outside 1..{N} (dimension mismatch)")
        key = (i, j, k, l)
        if key in seen:
            raise RMatrixError(f"entry {pos}: duplicate entry out={[i, j]} in={[k, l]}")
        seen.add(key)
        try:
            value = parse_scalar(str(e["value"]))
        except ScalarSyntaxError as exc:
            raise RMatrixError(f"entry {pos}: {exc}") from exc
        m[(i - 1) * N + (j - 1), (k - 1) * N + (l - 1)] = value(ctx.q)
    return HeckeSymmetry(N, m, ctx, name=doc.get("name", label))


def dump_rmatrix(R: HeckeSymmetry, values: dict | None = None) -> dict:
    """Document for ``R`` with entries written as rationals.

    ``values`` may map ``(i, j, k, l)`` (1-based) to expression text to
    keep symbolic entries.
    """
    N = R.N
    entries = []
    for r, c, v in linalg.nonzeros(R.matrix):
        i, j = divmod(r, N)
        k, l = divmod(c, N)
        key = (i + 1, j + 1, k + 1, l + 1)
        text = (values or {}).get(key, str(v))
        entries.append({"out": [i + 1, j + 1], "in": [k + 1, l + 1], "value": text})
    return {"dim": N, "convention": "braid", "name": R.name, "entries": entries}


# --------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class ValidationReport:
    braid_residual: fmpq
    hecke_residual: fmpq

    @property
    def ok(self) -> bool:
        return self.braid_residual == 0 and self.hecke_residual == 0


def validate(R: HeckeSymmetry) -> ValidationReport:
    N, q = R.N, R.q
    r1 = linalg.embed(R.matrix, 1, 2, 3, N)
    r2 = linalg.embed(R.matrix, 2, 2, 3, N)
    braid = r1 * r2 * r1 - r2 * r1 * r2
    one = linalg.identity(N * N)
    hecke = (q * one - R.matrix) * (one / q + R.matrix)
    return ValidationReport(linalg.max_abs(braid), linalg.max_abs(hecke))


# --------------------------------------------------------------------------
# skew-inverse and R-trace
#
# Pairing "R.Psi":  sum_{a,b} R^{ia}_{jb} Psi^{bk}_{al} = d^i_l d^k_j
# Pairing "Psi.R":  sum_{a,b} Psi^{ia}_{jb} R^{bk}_{al} = d^i_l d^k_j
# Psi is stored like R: psi[(x, y), (z, w)] = Psi^{xy}_{zw}.

PAIRINGS = ("R.Psi", "Psi.R")


def _reshuffle(mat: fmpq_mat, N: int) -> fmpq_mat:
    """X[(i, j), (a, b)] = M^{ia}_{jb}."""
    out = fmpq_mat(N * N, N * N)
    for r, c, v in linalg.nonzeros(mat):
        i, a = divmod(r, N)
        j, b = divmod(c, N)
        out[i * N + j, a * N + b] = v
    return out


def skew_inverse(R: HeckeSymmetry, pairing: str = "R.Psi") -> fmpq_mat:
    N = R.N
    if pairing == "R.Psi":
        x = _reshuffle(R.matrix, N)
        if x.rank() < N * N:
            raise RMatrixError("not skew-invertible")
        y = x.inv()
        # Psi^{bk}_{al} = y[(a, b), (l, k)]
        psi = fmpq_mat(N * N, N * N)
        for r, c, v in linalg.nonzeros(y):
            a, b = divmod(r, N)
            l, k = divmod(c, N)
            psi[b * N + k, a * N + l] = v
        return psi
    if pairing == "Psi.R":
        # Z[(a, b), (l, k)] = R^{bk}_{al};  Psi^{ia}_{jb} = Z^{-1}[(i, j), (a, b)]
        z = fmpq_mat(N * N, N * N)
        for r, c, v in linalg.nonzeros(R.matrix):
            b, k = divmod(r, N)
            a, l = divmod(c, N)
            z[a * N + b, l * N + k] = v
        if z.rank() < N * N:
            raise RMatrixError("not skew-invertible")
        y = z.inv()
        psi = fmpq_mat(N * N, N * N)
        for r, c, v in linalg.nonzeros(y):
            i, j = divmod(r, N)
            a, b = divmod(c, N)
            psi[i * N + a, j * N + b] = v
        return psi
    raise ValueError(f"unknown pairing {pairing!r}")


def contraction_residual(R: HeckeSymmetry, psi: fmpq_mat, pairing: str) -> fmpq:
    """Max deviation of the defining contraction from the identity pairing."""
    N = R.N
    worst = fmpq(0)
    for i in range(N):
        for j in range(N):
            for k in range(N):
                for l in range(N):
                    s = fmpq(0)
                    for a in range(N):
                        for b in range(N):
                            if pairing == "R.Psi":
                                s += R.entry(i, a, j, b) * psi[b * N + k, a * N + l]
                            else:
                                s += psi[i * N + a, j * N + b] * R.entry(b, k, a, l)
                    target = 1 if (i == l and k == j) else 0
                    d = abs(s - target)
                    worst = max(worst, d)
    return worst


def _trace_slot(psi: fmpq_mat, N: int, slot: int) -> fmpq_mat:
    c = fmpq_mat(N, N)
    for k in range(N):
        for l in range(N):
            s = fmpq(0)
            for b in range(N):
                s += psi[b * N + k, b * N + l] if slot == 1 else psi[k * N + b, l * N + b]
            c[k, l] = s
    return c


@dataclass(frozen=True, eq=False)
class TraceData:
    R: HeckeSymmetry
    skew_inverse: fmpq_mat
    trace_matrix: fmpq_mat
    rank: int
    hilbert: tuple[int, ...]
    pairing: str
    traced_slot: int
    even_evidence: tuple[tuple[int, bool], ...] = field(default=())

    @property
    def m(self) -> int:
        return self.rank

    def rtrace_scalar(self, x: fmpq_mat) -> fmpq:
        return linalg.trace(self.trace_matrix * x)


def rtrace_last(x: fmpq_mat, C: fmpq_mat, N: int, k: int, width: int = 1) -> fmpq_mat:
    """R-trace over the trailing ``width`` slots of an operator on k slots."""
    cw = C
    for _ in range(width - 1):
        cw = linalg.kron(cw, C)
    xc = linalg.embed(cw, k - width + 1, width, k, N) * x
    return linalg.partial_trace(xc, k - width, N, k)


def trace_data(R: HeckeSymmetry, max_dim: int = 3 ** 6) -> TraceData:
    """Skew-inverse, R-trace matrix, rank and Hilbert coefficients.

    Every (pairing, traced slot) convention is tried; the first one meeting
    Tr_R I = q^{-m} m_q, Tr_{R(2)} R = I and Tr_{R(2)} R^{-1} = q^{-2m} I
    is kept.  No rescaling is ever applied.
    """
    from .young import antisymmetrizer

    N, q = R.N, R.q
    hilbert = [1]
    k = 1
    while True:
        if N ** k > max_dim:
            raise RMatrixError(f"rank search exceeded size cap at k = {k}")
        a = antisymmetrizer(R, k)
        rk = a.rank()
        if rk == 0:
            break
        hilbert.append(rk)
        k += 1
    m = len(hilbert) - 1
    evidence = [(m + 1, True)]
    if N ** (m + 2) <= max_dim:
        evidence.append((m + 2, antisymmetrizer(R, m + 2).rank() == 0))

    mq = sum((q ** (m - 1 - 2 * i) for i in range(m)), fmpq(0))
    tr_one = mq / q ** m
    one2 = linalg.identity(N)
    failures = []
    for pairing in PAIRINGS:
        try:
            psi = skew_inverse(R, pairing)
        except RMatrixError:
            failures.append(f"{pairing}: not skew-invertible")
            continue
        for slot in (1, 2):
            C = _trace_slot(psi, N, slot)
            checks = (
                linalg.trace(C) == tr_one,
                rtrace_last(R.matrix, C, N, 2) == one2,
                rtrace_last(R.inverse, C, N, 2) == one2 / q ** (2 * m),
            )
            if all(checks):
                return TraceData(R, psi, C, m, tuple(hilbert), pairing, slot, tuple(evidence))
            failures.append(f"{pairing}/slot{slot}: {checks}")
    if all("not skew-invertible" in f for f in failures):
        raise RMatrixError("not skew-invertible")
    raise RMatrixError("R-trace normalization violated (" + "; ".join(failures) + ")")
