"""Thin helpers over sympy's exact ``DomainMatrix`` on the rationals.

Matrices act on column vectors. Subspaces are stored as reduced row echelon
bases (rows), which makes coordinates of a member vector a pivot lookup.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Q = QQ


def qq(x) -> object:
    """Convert ints, Fractions and strings like ``"3/2"`` into field elements."""
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ.convert(x)


def to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def matrix(rows: Sequence[Sequence], nrows: int | None = None, ncols: int | None = None) -> DomainMatrix:
    rows = [[qq(v) for v in r] for r in rows]
    if nrows is None:
        nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return DomainMatrix.zeros((nrows, ncols), QQ)
    return DomainMatrix(rows, (nrows, ncols), QQ)


def zeros(r: int, c: int) -> DomainMatrix:
    return DomainMatrix.zeros((r, c), QQ)


def eye(n: int) -> DomainMatrix:
    return DomainMatrix.eye(n, QQ)


def entries(m: DomainMatrix) -> list[list]:
    r, c = m.shape
    if r == 0 or c == 0:
        return [[] for _ in range(r)]
    return m.to_list()


def is_zero(m: DomainMatrix) -> bool:
    r, c = m.shape
    return r == 0 or c == 0 or m.is_zero_matrix


def vstack(blocks: Sequence[DomainMatrix], ncols: int) -> DomainMatrix:
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return zeros(0, ncols)
    if ncols == 0:
        return zeros(sum(b.shape[0] for b in blocks), 0)
    return DomainMatrix.vstack(*blocks) if len(blocks) > 1 else blocks[0]


def hstack(blocks: Sequence[DomainMatrix], nrows: int) -> DomainMatrix:
    blocks = [b for b in blocks if b.shape[1]]
    if not blocks:
        return zeros(nrows, 0)
    if nrows == 0:
        return zeros(0, sum(b.shape[1] for b in blocks))
    return DomainMatrix.hstack(*blocks) if len(blocks) > 1 else blocks[0]


def block_diag(blocks: Sequence[DomainMatrix]) -> DomainMatrix:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = [[QQ(0)] * c for _ in range(r)]
    i0 = j0 = 0
    for b in blocks:
        for i, row in enumerate(entries(b)):
            out[i0 + i][j0:j0 + len(row)] = row
        i0 += b.shape[0]
        j0 += b.shape[1]
    return DomainMatrix(out, (r, c), QQ) if r and c else zeros(r, c)


def matmul(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if 0 in (a.shape[0], a.shape[1], b.shape[1]):
        return zeros(a.shape[0], b.shape[1])
    return a * b


def rank(m: DomainMatrix) -> int:
    if 0 in m.shape:
        return 0
    return m.rank()


def rref(m: DomainMatrix) -> tuple[DomainMatrix, tuple[int, ...]]:
    """Nonzero rows of the reduced echelon form and the pivot columns."""
    r, c = m.shape
    if r == 0 or c == 0:
        return zeros(0, c), ()
    red, pivots = m.rref()
    rows = entries(red)[:len(pivots)]
    return matrix(rows, len(pivots), c), tuple(pivots)


def nullspace(m: DomainMatrix) -> DomainMatrix:
    """Basis of {v : m v = 0} as the rows of the returned matrix."""
    r, c = m.shape
    if c == 0:
        return zeros(0, 0)
    if r == 0 or m.is_zero_matrix:
        return eye(c)
    ns = m.nullspace()
    if ns.shape[0] == 0:
        return zeros(0, c)
    return rref(ns)[0]


def solve_unique(m: DomainMatrix, b: DomainMatrix) -> DomainMatrix | None:
    """A solution of m x = b (any one), or None when inconsistent."""
    r, c = m.shape
    aug = hstack([m, b], r)
    red, piv = rref(aug)
    if any(p >= c for p in piv):
        return None
    x = [[QQ(0)] * b.shape[1] for _ in range(c)]
    rows = entries(red)
    for i, p in enumerate(piv):
        x[p] = rows[i][c:]
    return matrix(x, c, b.shape[1])


class Subspace:
    """A subspace of Q^n held as a reduced row echelon basis."""

    def __init__(self, n: int, rows: DomainMatrix | None = None):
        self.n = n
        if rows is None:
            rows = zeros(0, n)
        self.basis, self.pivots = rref(rows)

    @classmethod
    def span(cls, n: int, vectors: Sequence[Sequence]) -> Subspace:
        return cls(n, matrix(vectors, len(vectors), n))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace(self.n, vstack([self.basis, other.basis], self.n))

    def contains(self, other: Subspace) -> bool:
        return (self + other).dim == self.dim

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and \
            self.dim == other.dim and self.contains(other)

    def coords(self, vectors: DomainMatrix) -> DomainMatrix:
        """Coordinates (columns) of member column vectors in this basis."""
        if not self.pivots:
            return zeros(0, vectors.shape[1])
        return vectors.extract(list(self.pivots), list(range(vectors.shape[1]))) \
            if vectors.shape[1] else zeros(self.dim, 0)

    def complement_indices(self) -> list[int]:
        return [j for j in range(self.n) if j not in set(self.pivots)]

    def projection(self) -> DomainMatrix:
        """Matrix of Q^n -> Q^n / self in the basis of non-pivot standard vectors."""
        comp = self.complement_indices()
        pos = {j: k for k, j in enumerate(comp)}
        out = [[QQ(0)] * self.n for _ in comp]
        rows = entries(self.basis)
        for j in range(self.n):
            if j in pos:
                out[pos[j]][j] = QQ(1)
        for i, p in enumerate(self.pivots):
            for j, k in pos.items():
                out[k][p] = -rows[i][j]
        return matrix(out, len(comp), self.n)

    def section(self) -> DomainMatrix:
        """Inclusion of the complement (non-pivot standard vectors) into Q^n."""
        comp = self.complement_indices()
        out = [[QQ(0)] * len(comp) for _ in range(self.n)]
        for k, j in enumerate(comp):
            out[j][k] = QQ(1)
        return matrix(out, self.n, len(comp))

    def basis_columns(self) -> DomainMatrix:
        if self.dim == 0:
            return zeros(self.n, 0)
        if self.n == 0:
            return zeros(0, self.dim)
        return self.basis.transpose()
