"""Exact subspaces of R^4 with coordinates in a cyclotomic field.

Every subspace is kept in reduced row-echelon form, which is the canonical
form used for equality, hashing and deduplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cyclo import CycloNumber

Vector = tuple[CycloNumber, ...]
AMBIENT_DIM = 4


def _rref_rows(rows: list[list[CycloNumber]], ncols: int) -> tuple[list[list[CycloNumber]], list[int]]:
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != 1:
            inv = lead.inverse()
            rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


@dataclass(frozen=True)
class Subspace:
    """A subspace of R^4 given by its RREF basis."""

    order: int
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return AMBIENT_DIM

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(c for c, x in enumerate(row) if not x.is_zero()) for row in self.basis)

    def contains(self, v: Sequence[CycloNumber]) -> bool:
        if all(x.is_zero() for x in v):
            return True
        if self.dim == 0:
            return False
        # residual of v after eliminating along the pivots must vanish
        w = list(v)
        for row, c in zip(self.basis, self.pivots):
            f = w[c]
            if not f.is_zero():
                w = [a - f * b for a, b in zip(w, row)]
        return all(x.is_zero() for x in w)

    def contains_subspace(self, other: "Subspace") -> bool:
        return other.dim <= self.dim and all(self.contains(v) for v in other.basis)

    def complement(self) -> "Subspace":
        """Orthogonal complement for the standard inner product."""
        return kernel(self.basis, self.order) if self.basis else full_space(self.order)

    def __add__(self, other: "Subspace") -> "Subspace":
        return rref(list(self.basis) + list(other.basis), self.order)

    def to_float(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self.basis]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": [[x.to_json() for x in row] for row in self.basis],
            "basis_float": self.to_float(),
        }


def rref(vectors: Iterable[Sequence[CycloNumber]], order: int) -> Subspace:
    """Canonical span of the given 4-vectors."""
    rows = [list(v) for v in vectors]
    for v in rows:
        if len(v) != AMBIENT_DIM:
            raise ValueError("vectors must have 4 components")
    rows = [v for v in rows if any(not x.is_zero() for x in v)]
    if not rows:
        return zero_space(order)
    reduced, _ = _rref_rows(rows, AMBIENT_DIM)
    return Subspace(order, tuple(tuple(r) for r in reduced))


def kernel(M: Sequence[Sequence[CycloNumber]], order: int) -> Subspace:
    """Null space of an n x 4 matrix."""
    rows = [list(r) for r in M if any(not x.is_zero() for x in r)]
    if not rows:
        return full_space(order)
    reduced, pivots = _rref_rows(rows, AMBIENT_DIM)
    zero = CycloNumber.zero(order)
    one = CycloNumber.one(order)
    free = [c for c in range(AMBIENT_DIM) if c not in pivots]
    vecs = []
    for f in free:
        v = [zero] * AMBIENT_DIM
        v[f] = one
        for row, c in zip(reduced, pivots):
            v[c] = -row[f]
        vecs.append(v)
    return rref(vecs, order)


def intersect(U: Subspace, W: Subspace) -> Subspace:
    if U.dim == AMBIENT_DIM:
        return W
    if W.dim == AMBIENT_DIM or U == W:
        return U
    if U.dim == 0 or W.dim == 0:
        return zero_space(U.order)
    return kernel(list(U.complement().basis) + list(W.complement().basis), U.order)


def zero_space(order: int) -> Subspace:
    return Subspace(order, ())


def full_space(order: int) -> Subspace:
    zero = CycloNumber.zero(order)
    one = CycloNumber.one(order)
    return Subspace(
        order, tuple(tuple(one if i == j else zero for j in range(AMBIENT_DIM)) for i in range(AMBIENT_DIM))
    )


def matmul(A: Sequence[Sequence[CycloNumber]], B: Sequence[Sequence[CycloNumber]]) -> list[list[CycloNumber]]:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def det(M: Sequence[Sequence[CycloNumber]]) -> CycloNumber:
    """Determinant by cofactor expansion (division free)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    acc = None
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else M[0][0] * 0


def identity_matrix(order: int, n: int = AMBIENT_DIM) -> list[list[CycloNumber]]:
    zero = CycloNumber.zero(order)
    one = CycloNumber.one(order)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[CycloNumber]]) -> list[list[CycloNumber]]:
    return [list(col) for col in zip(*M)]
