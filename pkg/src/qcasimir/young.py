"""Partitions, standard tableaux, R-skew-symmetrizers and JM idempotents."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterator

from flint import fmpq

from .rmatrix import HeckeSymmetry
from .tensor import JMFamily, TensorOp, jm_family, lift

__all__ = [
    "Partition", "StandardTableau", "IdempotentSet", "IdempotentError",
    "partitions", "enumerate_tableaux", "hook_count", "antisymmetrizer",
    "symmetrizer", "tableau_projector", "primitive_idempotents",
]


class IdempotentError(ValueError):
    pass


class Partition(tuple):
    """Weakly decreasing tuple of positive parts."""

    def __new__(cls, parts=()):
        if isinstance(parts, str):
            text = parts.strip().strip("()[]")
            parts = [int(p) for p in text.replace(" ", "").split(",") if p] if text else []
        parts = tuple(int(p) for p in parts if int(p) != 0)
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def rows(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based part with zero padding."""
        return self[i - 1] if i <= len(self) else 0

    def conjugate(self) -> Partition:
        if not self:
            return Partition()
        return Partition([sum(1 for p in self if p > j) for j in range(self[0])])

    def boxes(self) -> list[tuple[int, int]]:
        return [(r, c) for r, p in enumerate(self) for c in range(p)]

    def contents(self) -> list[int]:
        return [c - r for r, c in self.boxes()]

    def addable(self) -> list[int]:
        """Rows (0-based) where a box may be added."""
        out = [r for r in range(len(self)) if r == 0 or self[r - 1] > self[r]]
        out.append(len(self))
        return out

    def add_box(self, row: int) -> Partition:
        parts = list(self) + [0]
        parts[row] += 1
        return Partition(parts)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


def partitions(k: int, max_rows: int | None = None) -> list[Partition]:
    """Partitions of ``k`` in reverse lexicographic order."""
    out: list[Partition] = []

    def rec(rest: int, cap: int, acc: list[int]):
        if rest == 0:
            out.append(Partition(acc))
            return
        if max_rows is not None and len(acc) >= max_rows:
            return
        for p in range(min(rest, cap), 0, -1):
            rec(rest - p, p, acc + [p])

    rec(k, k, [])
    return out


@dataclass(frozen=True)
class StandardTableau:
    """Rows of a standard filling with 1..k."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> Partition:
        return Partition(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def position(self, entry: int) -> tuple[int, int]:
        for r, row in enumerate(self.rows):
            if entry in row:
                return r, row.index(entry)
        raise KeyError(entry)

    def contents(self) -> tuple[int, ...]:
        """``c_i = column - row`` of the box holding ``i``."""
        out = []
        for i in range(1, self.size + 1):
            r, c = self.position(i)
            out.append(c - r)
        return tuple(out)

    def growth(self) -> list[Partition]:
        """Shapes of the sub-tableaux holding 1..i for i = 0..k."""
        shapes = [Partition()]
        counts = [0] * len(self.rows)
        for i in range(1, self.size + 1):
            r, _ = self.position(i)
            counts[r] += 1
            shapes.append(Partition(sorted(counts, reverse=True)))
        return shapes

    def is_standard(self) -> bool:
        entries = sorted(x for row in self.rows for x in row)
        if entries != list(range(1, self.size + 1)):
            return False
        if any(len(a) < len(b) for a, b in zip(self.rows, self.rows[1:])):
            return False
        for row in self.rows:
            if any(a >= b for a, b in zip(row, row[1:])):
                return False
        for r in range(1, len(self.rows)):
            for c, x in enumerate(self.rows[r]):
                if self.rows[r - 1][c] >= x:
                    return False
        return True

    def label(self) -> str:
        return "/".join("".join(map(str, r)) if self.size < 10 else ",".join(map(str, r)) for r in self.rows)

    def __str__(self) -> str:
        return self.label()


def enumerate_tableaux(shape) -> list[StandardTableau]:
    """All standard tableaux of ``shape``, sorted by row reading word."""
    shape = Partition(shape)
    k = shape.weight
    found: list[StandardTableau] = []

    def rec(rows: list[list[int]], nxt: int):
        if nxt > k:
            found.append(StandardTableau(tuple(tuple(r) for r in rows)))
            return
        for r in range(len(shape)):
            if len(rows[r]) < shape[r] and (r == 0 or len(rows[r - 1]) > len(rows[r])):
                rows[r].append(nxt)
                rec(rows, nxt + 1)
                rows[r].pop()

    rec([[] for _ in shape], 1)
    return sorted(found, key=lambda t: [x for row in t.rows for x in row])


def hook_count(shape) -> int:
    shape = Partition(shape)
    conj = shape.conjugate()
    prod = 1
    for r, c in shape.boxes():
        prod *= (shape[r] - c - 1) + (conj[c] - r - 1) + 1
    return factorial(shape.weight) // prod


# --------------------------------------------------------------------------
# R-matrix projectors

def _qint(q: fmpq, n: int) -> fmpq:
    return sum((q ** (n - 1 - 2 * i) for i in range(n)), fmpq(0))


def antisymmetrizer(R: HeckeSymmetry, k: int) -> TensorOp:
    """A^(1) = I,  A^(k) = A^(k-1) (q^{k-1} I - (k-1)_q R_{k-1}) A^(k-1) / k_q."""
    if k < 1:
        raise ValueError("k must be positive")
    q = R.q
    a = TensorOp.identity(R.N, 1)
    for j in range(2, k + 1):
        prev = a.extend(1)
        step = TensorOp.identity(R.N, j) * q ** (j - 1) - lift(R, j - 1, j) * _qint(q, j - 1)
        a = prev * step * prev / _qint(q, j)
    return a


def symmetrizer(R: HeckeSymmetry, k: int) -> TensorOp:
    """Same recursion with R -> -R^{-1}, q -> q^{-1} role swap (one-row projector)."""
    q = R.q
    s = TensorOp.identity(R.N, 1)
    for j in range(2, k + 1):
        prev = s.extend(1)
        step = TensorOp.identity(R.N, j) * q ** (1 - j) + lift(R, j - 1, j) * _qint(q, j - 1)
        s = prev * step * prev / _qint(q, j)
    return s


def tableau_projector(R: HeckeSymmetry, tableau: StandardTableau,
                      jm: JMFamily | None = None) -> TensorOp:
    """Product over i of Lagrange projectors of J_i onto q^{2 c_i}.

    Interpolation nodes at step i are the contents of boxes addable to the
    shape holding 1..i-1.
    """
    k = tableau.size
    q = R.q
    jm = jm or jm_family(R, k)
    contents = tableau.contents()
    growth = tableau.growth()
    P = TensorOp.identity(R.N, k)
    for i in range(2, k + 1):
        prev = growth[i - 1]
        nodes = []
        for row in prev.addable():
            col = prev.part(row + 1)
            nodes.append(col - row)
        target = q ** (2 * contents[i - 1])
        for c in nodes:
            if c == contents[i - 1]:
                continue
            other = q ** (2 * c)
            if other == target:
                raise IdempotentError(f"eigenvalue collision q^{2 * c} = q^{2 * contents[i - 1]} (q not generic)")
            P = P * (jm[i] - TensorOp.identity(R.N, k) * other) / (target - other)
    return P


@dataclass(frozen=True, eq=False)
class IdempotentSet:
    k: int
    members: dict  # (Partition, StandardTableau) -> TensorOp
    jm: JMFamily

    def items(self):
        return self.members.items()

    def for_shape(self, shape) -> list[tuple[StandardTableau, TensorOp]]:
        shape = Partition(shape)
        return [(t, P) for (lam, t), P in self.members.items() if lam == shape]

    def shapes(self) -> list[Partition]:
        seen = []
        for lam, _ in self.members:
            if lam not in seen:
                seen.append(lam)
        return seen

    def completeness_defect(self) -> TensorOp:
        total = TensorOp.zero(self.jm[1].N, self.k)
        for P in self.members.values():
            total = total + P
        return TensorOp.identity(total.N, self.k) - total

    def residuals(self, q: fmpq) -> dict[str, fmpq]:
        """Max-norm residuals of every IdempotentSet invariant."""
        idem = fmpq(0)
        orth = fmpq(0)
        eig = fmpq(0)
        items = list(self.members.items())
        for a, ((lam, t), P) in enumerate(items):
            idem = max(idem, (P * P - P).max_abs())
            for i, c in enumerate(t.contents(), start=1):
                J = self.jm[i]
                eig = max(eig, (J * P - P * q ** (2 * c)).max_abs(), (P * J - P * q ** (2 * c)).max_abs())
            for b, (_, Q) in enumerate(items):
                if a != b:
                    orth = max(orth, (P * Q).max_abs())
        return {
            "idempotent": idem,
            "orthogonal": orth,
            "complete": self.completeness_defect().max_abs(),
            "jm_eigen": eig,
        }


def primitive_idempotents(R: HeckeSymmetry, k: int, m: int | None = None) -> IdempotentSet:
    """P_(lambda, a)(R) for every standard tableau of every lambda |- k with <= m rows."""
    jm = jm_family(R, k)
    members = {}
    for lam in partitions(k, max_rows=m):
        for t in enumerate_tableaux(lam):
            P = tableau_projector(R, t, jm)
            for i, c in enumerate(t.contents(), start=1):
                if not (jm[i] * P - P * R.q ** (2 * c)).is_zero():
                    raise IdempotentError(f"non-scalar branch: J_{i} on tableau {t} (R not admissible at k = {k})")
            members[(lam, t)] = P
    return IdempotentSet(k, members, jm)
