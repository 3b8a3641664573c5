"""Dense matrices over GF(2^b) with exact Gaussian elimination."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import kernels
from .errors import UsageError
from .gf import FieldSpec


@lru_cache(maxsize=None)
def _kernel_tables(field: FieldSpec):
    exp, log = field.tables
    return kernels.make_tables(list(exp), list(log), field.order)


def _rref_generic(entries, rows, cols, field: FieldSpec):
    a = [list(entries[i * cols:(i + 1) * cols]) for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        s = field.inv(a[r][c])
        a[r] = [field.mul(s, x) for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [y ^ field.mul(f, x) for x, y in zip(a[r], a[i])]
        pivots.append(c)
        r += 1
    return [x for row in a for x in row], pivots


def rref_entries(entries, rows, cols, field: FieldSpec):
    if field.has_tables:
        return kernels.gf_rref(entries, rows, cols, _kernel_tables(field))
    return _rref_generic(entries, rows, cols, field)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[int, ...]
    field: FieldSpec

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise UsageError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise UsageError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        top = self.field.size
        if any(not 0 <= x < top for x in self.entries):
            raise UsageError(f"matrix entry outside {self.field}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], field: FieldSpec, cols: int | None = None) -> Matrix:
        rows = [tuple(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise UsageError("ragged matrix rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r), field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec) -> Matrix:
        return cls(rows, cols, (0,) * (rows * cols), field)

    @classmethod
    def identity(cls, k: int, field: FieldSpec) -> Matrix:
        return cls(k, k, tuple(int(i == j) for i in range(k) for j in range(k)), field)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def support(self, i: int) -> set[int]:
        return {j for j, x in enumerate(self.row(i)) if x}

    def transpose(self) -> Matrix:
        e = tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows))
        return Matrix(self.cols, self.rows, e, self.field)

    def vstack(self, other: Matrix) -> Matrix:
        if other.cols != self.cols or other.field != self.field:
            raise UsageError("vstack needs equal column counts and fields")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries, self.field)

    def hstack(self, other: Matrix) -> Matrix:
        if other.rows != self.rows or other.field != self.field:
            raise UsageError("hstack needs equal row counts and fields")
        return Matrix.from_rows(
            [self.row(i) + other.row(i) for i in range(self.rows)], self.field, self.cols + other.cols
        )

    def row_submatrix(self, rows: Iterable[int]) -> Matrix:
        rows = list(rows)
        for i in rows:
            if not 0 <= i < self.rows:
                raise UsageError(f"row index {i} out of range")
        return Matrix(len(rows), self.cols, tuple(x for i in rows for x in self.row(i)), self.field)

    def rref(self) -> tuple[Matrix, list[int]]:
        flat, pivots = rref_entries(self.entries, self.rows, self.cols, self.field)
        return Matrix(self.rows, self.cols, tuple(flat), self.field), pivots

    def rank(self) -> int:
        return len(rref_entries(self.entries, self.rows, self.cols, self.field)[1])

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field}, {self.to_rows()})"


def rank(M: Matrix) -> int:
    return M.rank()


def column_submatrix(M: Matrix, cols: Sequence[int]) -> Matrix:
    """Columns of ``M`` in the given order."""
    cols = list(cols)
    for j in cols:
        if not 0 <= j < M.cols:
            raise UsageError(f"column index {j} out of range for {M.cols} columns")
    e = tuple(M.entries[i * M.cols + j] for i in range(M.rows) for j in cols)
    return Matrix(M.rows, len(cols), e, M.field)


def solve_for_unit_rows(M: Matrix) -> set[int]:
    """Columns j whose unit vector e_j lies in the row space of ``M``.

    In reduced row echelon form e_j is in the row space exactly when some
    reduced row equals e_j.
    """
    flat, pivots = rref_entries(M.entries, M.rows, M.cols, M.field)
    out = set()
    for r, c in enumerate(pivots):
        row = flat[r * M.cols:(r + 1) * M.cols]
        if sum(1 for x in row if x) == 1:
            out.add(c)
    return out


def find_singular_square_submatrix(M: Matrix, k: int):
    """First k x k submatrix (lexicographic rows, then columns) of rank < k.

    Returns ``(row_subset, col_subset)`` or None when all are full rank.
    """
    if not 0 <= k <= min(M.rows, M.cols):
        raise UsageError(f"k={k} exceeds min(rows, cols) of a {M.rows}x{M.cols} matrix")
    row_sets = [tuple(range(M.rows))] if M.rows == k else combinations(range(M.rows), k)
    for rs in row_sets:
        sub = M if M.rows == k else M.row_submatrix(rs)
        for cs in combinations(range(M.cols), k):
            if column_submatrix(sub, cs).rank() < k:
                return rs, cs
    return None


def all_square_submatrices_full_rank(M: Matrix, k: int) -> bool:
    return find_singular_square_submatrix(M, k) is None
