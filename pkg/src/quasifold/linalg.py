"""Exact linear algebra over a scalar field.

Elimination is fraction-free (Bareiss) with a fixed pivot rule: scan
columns left to right and take the first row with a nonzero entry.  The
derived reduced echelon form therefore yields reproducible ranks, kernel
bases and solutions, which the golden tests rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .scalars import Field, Scalar

Vector = tuple[Scalar, ...]


def as_vector(field: Field, entries: Iterable) -> Vector:
    return tuple(field.scalar(e) for e in entries)


@dataclass(frozen=True)
class Echelon:
    """Reduced row echelon form with its pivot columns."""

    rows: tuple[Vector, ...]
    pivots: tuple[int, ...]


class Matrix:
    """Immutable dense matrix over one Field."""

    def __init__(self, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> None:
        self.field = field
        self.rows = tuple(as_vector(field, row) for row in rows)
        if self.rows:
            width = len(self.rows[0])
            if any(len(r) != width for r in self.rows):
                raise DimensionMismatch("ragged rows")
            if cols is not None and cols != width:
                raise DimensionMismatch(f"rows of length {width}, cols={cols}")
            self.shape = (len(self.rows), width)
        else:
            self.shape = (0, 0 if cols is None else cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def transpose(self) -> "Matrix":
        m, n = self.shape
        return Matrix(self.field, [[self.rows[i][j] for i in range(m)] for j in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"Matrix[{body}]"

    def mat_vec(self, v: Sequence) -> Vector:
        vec = as_vector(self.field, v)
        m, n = self.shape
        if len(vec) != n:
            raise DimensionMismatch(f"vector of length {len(vec)} against {n} columns")
        zero = self.field.zero
        return tuple(sum((row[j] * vec[j] for j in range(n)), zero) for row in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.shape[1] != other.shape[0]:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose().rows
        return Matrix(self.field, [
            [sum((a * b for a, b in zip(row, col)), self.field.zero) for col in cols]
            for row in self.rows
        ])

    # -- elimination -----------------------------------------------------------

    def _forward(self) -> tuple[list[list[Scalar]], list[int], int]:
        """Bareiss forward elimination.

        Returns (rows, pivot columns, swap parity).  Division by the previous
        pivot is exact, which keeps intermediate entries small.
        """
        work = [list(r) for r in self.rows]
        m, n = self.shape
        pivots: list[int] = []
        parity = 1
        prev = self.field.one
        r = 0
        for c in range(n):
            pivot_row = next((i for i in range(r, m) if not work[i][c].is_zero()), None)
            if pivot_row is None:
                continue
            if pivot_row != r:
                work[r], work[pivot_row] = work[pivot_row], work[r]
                parity = -parity
            pivot = work[r][c]
            for i in range(r + 1, m):
                factor = work[i][c]
                for j in range(n):
                    work[i][j] = (pivot * work[i][j] - factor * work[r][j]) / prev
            prev = pivot
            pivots.append(c)
            r += 1
            if r == m:
                break
        return work, pivots, parity

    def echelon(self) -> Echelon:
        """Reduced row echelon form (pivots normalized to 1)."""
        work, pivots, _ = self._forward()
        rank = len(pivots)
        for i in reversed(range(rank)):
            c = pivots[i]
            inv = work[i][c].inverse()
            work[i] = [e * inv for e in work[i]]
            for k in range(i):
                factor = work[k][c]
                if not factor.is_zero():
                    work[k] = [a - factor * b for a, b in zip(work[k], work[i])]
        return Echelon(tuple(tuple(r) for r in work[:rank]), tuple(pivots))

    def rank(self) -> int:
        return len(self._forward()[1])

    def kernel(self) -> tuple[Vector, ...]:
        """Basis of the right kernel, echelon-derived and deterministic.

        Free columns are visited in increasing index order; each basis vector
        has a 1 in its free column and zeros in every other free column.
        """
        ech = self.echelon()
        n = self.shape[1]
        free = [c for c in range(n) if c not in ech.pivots]
        zero = self.field.zero
        basis = []
        for f in free:
            v = [zero] * n
            v[f] = self.field.one
            for row, c in zip(ech.rows, ech.pivots):
                v[c] = -row[f]
            basis.append(tuple(v))
        return tuple(basis)

    def solve(self, rhs: Sequence) -> Vector | None:
        """Exact solution of self @ x = rhs, or None when inconsistent.

        Underdetermined systems return the particular solution whose free
        coordinates are zero.
        """
        b = as_vector(self.field, rhs)
        m, n = self.shape
        if len(b) != m:
            raise DimensionMismatch(f"rhs of length {len(b)} against {m} rows")
        augmented = Matrix(self.field, [list(row) + [b[i]] for i, row in enumerate(self.rows)])
        ech = augmented.echelon()
        if n in ech.pivots:
            return None
        zero = self.field.zero
        x = [zero] * n
        for row, c in zip(ech.rows, ech.pivots):
            x[c] = row[n]
        return tuple(x)

    def det(self) -> Scalar:
        m, n = self.shape
        if m != n:
            raise DimensionMismatch("determinant of a non-square matrix")
        if m == 0:
            return self.field.one
        work, pivots, parity = self._forward()
        if len(pivots) < n:
            return self.field.zero
        d = work[n - 1][pivots[n - 1]]
        return d if parity == 1 else -d

    def inverse(self) -> "Matrix | None":
        """Exact inverse, or None when singular."""
        m, n = self.shape
        if m != n:
            raise DimensionMismatch("inverse of a non-square matrix")
        augmented = Matrix(self.field, [
            list(row) + [1 if i == j else 0 for j in range(n)]
            for i, row in enumerate(self.rows)
        ])
        ech = augmented.echelon()
        if len(ech.pivots) != n or list(ech.pivots) != list(range(n)):
            return None
        return Matrix(self.field, [row[n:] for row in ech.rows])
