"""Exact arbitrary-precision integer matrices and their normal forms.

Everything in this module is pure integer arithmetic; no floating point is
used anywhere. Matrices are immutable row-major tuples of Python ints, so
values can be hashed, compared bit-for-bit, and shared freely.

The two normal forms provided are the column Hermite normal form (with the
unimodular column transform) and the Smith normal form (with both unimodular
transforms). Canonical HNF makes lattice equality a plain equality test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """An immutable rows x cols integer matrix.

    ``data`` holds the entries as a tuple of row tuples. Empty matrices
    (0 rows or 0 columns) are legal and flow through every operation.
    """

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.data) != self.rows:
            raise ValueError("row count does not match data")
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged row in matrix data")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def column_vector(cls, entries: Sequence[int]) -> "IntMatrix":
        return cls.from_rows([[int(x)] for x in entries], cols=1)

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.data[i][j]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.data[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch: {self.cols} != {other.rows}")
        rows = []
        for i in range(self.rows):
            a_row = self.data[i]
            rows.append(tuple(
                sum(a_row[t] * other.data[t][j] for t in range(self.cols))
                for j in range(other.cols)))
        return IntMatrix(self.rows, other.cols, tuple(rows))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(-x for x in row) for row in self.data))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.data[i][j] for i in range(self.rows))

    def select_columns(self, indices: Iterable[int]) -> "IntMatrix":
        idx = list(indices)
        return IntMatrix(self.rows, len(idx),
                         tuple(tuple(row[j] for j in idx) for row in self.data))

    def top_rows(self, k: int) -> "IntMatrix":
        return IntMatrix(k, self.cols, self.data[:k])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def entries_row_major(self) -> tuple[int, ...]:
        return tuple(x for row in self.data for x in row)


def hstack(matrices: Sequence[IntMatrix], rows: int | None = None) -> IntMatrix:
    """Concatenate matrices side by side. ``rows`` disambiguates the empty list."""
    if not matrices:
        if rows is None:
            raise ValueError("hstack of no matrices needs an explicit row count")
        return IntMatrix.zeros(rows, 0)
    r = matrices[0].rows
    for m in matrices:
        if m.rows != r:
            raise ValueError("hstack row mismatch")
    data = tuple(tuple(itertools.chain.from_iterable(m.data[i] for m in matrices))
                 for i in range(r))
    return IntMatrix(r, sum(m.cols for m in matrices), data)


def _row_hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form: returns (H, U) with H = U @ m, U unimodular.

    H is in row echelon form with positive pivots; the entries above each
    pivot are reduced into [0, pivot). Zero rows sink to the bottom.
    """
    h = [list(row) for row in m.data]
    u = [[1 if i == j else 0 for j in range(m.rows)] for i in range(m.rows)]
    pivot_row = 0
    for col in range(m.cols):
        if pivot_row >= m.rows:
            break
        while True:
            nonzero = [i for i in range(pivot_row, m.rows) if h[i][col]]
            if not nonzero:
                break
            best = min(nonzero, key=lambda i: (abs(h[i][col]), i))
            if best != pivot_row:
                h[pivot_row], h[best] = h[best], h[pivot_row]
                u[pivot_row], u[best] = u[best], u[pivot_row]
            clean = True
            p = h[pivot_row][col]
            for i in range(pivot_row + 1, m.rows):
                if h[i][col]:
                    q = h[i][col] // p
                    h[i] = [a - q * b for a, b in zip(h[i], h[pivot_row])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[pivot_row])]
                    if h[i][col]:
                        clean = False
            if clean:
                break
        if pivot_row < m.rows and h[pivot_row][col]:
            if h[pivot_row][col] < 0:
                h[pivot_row] = [-x for x in h[pivot_row]]
                u[pivot_row] = [-x for x in u[pivot_row]]
            p = h[pivot_row][col]
            for i in range(pivot_row):
                q = h[i][col] // p
                if q:
                    h[i] = [a - q * b for a, b in zip(h[i], h[pivot_row])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[pivot_row])]
            pivot_row += 1
    return (IntMatrix.from_rows(h, cols=m.cols),
            IntMatrix.from_rows(u, cols=m.rows))


def hermite_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite normal form: (H, U) with A @ U = H, U unimodular.

    H is in column echelon form: the topmost nonzero row of each column
    strictly increases left to right, pivots are positive, entries to the
    left of a pivot (in the pivot's row) lie in [0, pivot), and zero columns
    are pushed to the right. H is the canonical representative of the column
    span of A.
    """
    ht, ut = _row_hnf(a.transpose())
    return ht.transpose(), ut.transpose()


def rank(a: IntMatrix) -> int:
    """Rank of A over the rationals, by exact integer row reduction."""
    h, _ = _row_hnf(a)
    return sum(1 for row in h.data if any(row))


def det(a: IntMatrix) -> int:
    """Determinant of a square matrix by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(row) for row in a.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """Smith normal form data: left @ A @ right equals diag padded with zeros.

    ``diag`` holds the positive elementary divisors d_1 | d_2 | ... | d_rank;
    ``left`` and ``right`` are unimodular.
    """

    left: IntMatrix
    diag: tuple[int, ...]
    right: IntMatrix
    rank: int

    def diagonal_matrix(self, rows: int, cols: int) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self.diag[i] if i == j and i < self.rank else 0 for j in range(cols)]
             for i in range(rows)],
            cols=cols)


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with both unimodular transforms.

    Pivoting picks the smallest nonzero absolute value in the working block
    (ties broken by position), which keeps intermediate growth modest and the
    result deterministic.
    """
    rows, cols = a.rows, a.cols
    s = [list(row) for row in a.data]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i: int, j: int) -> None:
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, mult: int) -> None:
        s[dst] = [a_ + mult * b_ for a_, b_ in zip(s[dst], s[src])]
        u[dst] = [a_ + mult * b_ for a_, b_ in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, mult: int) -> None:
        for row in s:
            row[dst] += mult * row[src]
        for row in v:
            row[dst] += mult * row[src]

    t = 0
    while True:
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if s[i][j] and (pivot is None or abs(s[i][j]) < abs(s[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            # Clear column t below the pivot, re-pivoting on remainders.
            reduced = True
            for i in range(t + 1, rows):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    add_row(i, t, -q)
                    if s[i][t]:
                        swap_rows(t, i)
                        reduced = False
            if not reduced:
                continue
            for j in range(t + 1, cols):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    add_col(j, t, -q)
                    if s[t][j]:
                        swap_cols(t, j)
                        reduced = False
            if reduced:
                break

        # Enforce divisibility of the remaining block by the pivot. Merging
        # an offending row and restarting strictly shrinks the pivot (gcd),
        # so this terminates.
        offender = None
        for i in range(t + 1, rows):
            if any(s[i][j] % s[t][t] for j in range(t + 1, cols)):
                offender = i
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    diag = tuple(s[i][i] for i in range(t))
    return SmithDecomposition(
        left=IntMatrix.from_rows(u, cols=rows),
        diag=diag,
        right=IntMatrix.from_rows(v, cols=cols),
        rank=t)


def elementary_divisors(a: IntMatrix) -> tuple[int, ...]:
    return smith_normal_form(a).diag


def is_unimodular(a: IntMatrix) -> bool:
    return a.rows == a.cols and det(a) in (1, -1)
