"""Dense exact linear algebra over QQ and prime fields.

All operations are deterministic: pivots are chosen as the first nonzero
entry in a row-major scan, so echelon forms (and hence kernels, quotient
bases and Pluecker signs downstream) are reproducible across runs.

Over a prime field the eliminations are dispatched to numpy int64 modular
arithmetic, which is exact for moduli below 2**31 (all intermediate
products stay below 2**62).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .fields import QQ, PrimeField


class ExactMatrix:
    """Immutable dense matrix over an exact field.

    Entries are stored row-major as a tuple of tuples of field elements
    (``Fraction`` over QQ, ints in ``[0, p)`` over F_p).
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, data: Sequence[Sequence], cols: int | None = None):
        self.field = field
        self.data = tuple(tuple(row) for row in data)
        self.rows = len(self.data)
        if self.rows:
            self.cols = len(self.data[0])
        else:
            self.cols = 0 if cols is None else cols
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows: Iterable[Iterable]) -> "ExactMatrix":
        return cls(field, [[field(x) for x in row] for row in rows])

    @classmethod
    def from_cols(cls, field, cols: Iterable[Iterable]) -> "ExactMatrix":
        cols = [list(c) for c in cols]
        if not cols:
            return cls(field, [])
        return cls.from_rows(field, zip(*cols))

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "ExactMatrix":
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n: int) -> "ExactMatrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    # -- accessors ---------------------------------------------------------

    def entry(self, i: int, j: int):
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.field.name == other.field.name
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field.name, self.data))

    def __repr__(self):
        return f"ExactMatrix({self.field!r}, {self.rows}x{self.cols})"

    def is_zero(self) -> bool:
        z = self.field.is_zero
        return all(z(x) for row in self.data for x in row)

    # -- basic algebra -----------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        if self.rows == 0:
            return ExactMatrix(self.field, [[] for _ in range(self.cols)], cols=0)
        return ExactMatrix(self.field, list(zip(*self.data)), cols=self.rows)

    def mul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        f = self.field
        if isinstance(f, PrimeField):
            a = _to_np(self)
            b = _to_np(other)
            return _from_np(f, (a @ b) % f.p)
        bt = list(zip(*other.data)) if other.rows else [() for _ in range(other.cols)]
        out = []
        zero = f.zero
        for arow in self.data:
            out.append([sum((x * y for x, y in zip(arow, bcol) if x != 0 and y != 0), zero) for bcol in bt])
        return ExactMatrix(f, out, cols=other.cols)

    def __matmul__(self, other):
        return self.mul(other)

    def mul_vec(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        f = self.field
        zero = f.zero
        out = []
        for row in self.data:
            acc = zero
            for x, y in zip(row, vec):
                if not f.is_zero(x) and not f.is_zero(y):
                    acc = f.add(acc, f.mul(x, y))
            out.append(acc)
        return tuple(out)

    def add(self, other: "ExactMatrix") -> "ExactMatrix":
        f = self.field
        return ExactMatrix(f, [[f.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def sub(self, other: "ExactMatrix") -> "ExactMatrix":
        f = self.field
        return ExactMatrix(f, [[f.sub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def scale(self, c) -> "ExactMatrix":
        f = self.field
        return ExactMatrix(f, [[f.mul(c, x) for x in row] for row in self.data])

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return ExactMatrix(self.field, [r1 + r2 for r1, r2 in zip(self.data, other.data)])

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return ExactMatrix(self.field, self.data + other.data)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(self.field, [[self.data[i][j] for j in col_idx] for i in row_idx])

    def take_cols(self, col_idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(self.field, [[row[j] for j in col_idx] for row in self.data])

    def convert(self, field) -> "ExactMatrix":
        """Coerce all entries into another field (ints/Fractions only)."""
        return ExactMatrix.from_rows(field, self.data)

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["ExactMatrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns (deterministic)."""
        f = self.field
        if isinstance(f, PrimeField):
            arr, piv = _mod_rref(_to_np(self), f.p)
            return _from_np(f, arr), piv
        rows = [list(r) for r in self.data]
        piv = _generic_rref(rows, f)
        return ExactMatrix(f, rows), piv

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        if isinstance(self.field, PrimeField):
            return len(_mod_rref(_to_np(self), self.field.p)[1])
        rows = [list(r) for r in self.data]
        return len(_generic_rref(rows, self.field, reduced=False))

    def right_kernel(self) -> "ExactMatrix":
        """Canonical basis of the right kernel, as matrix columns.

        The basis is the reduced column echelon form of the kernel: each
        column's first nonzero entry is 1 and pivot rows increase left to
        right, so equal kernels yield equal matrices.
        """
        if self.cols == 0:
            return ExactMatrix(self.field, [], cols=0)
        if self.rows == 0:
            return ExactMatrix.identity(self.field, self.cols)
        red, piv = self.rref()
        f = self.field
        pivset = set(piv)
        free = [j for j in range(self.cols) if j not in pivset]
        vecs = []
        for fcol in free:
            v = [f.zero] * self.cols
            v[fcol] = f.one
            for k, pcol in enumerate(piv):
                v[pcol] = f.neg(red.data[k][fcol])
            vecs.append(v)
        if not vecs:
            return ExactMatrix(f, [[] for _ in range(self.cols)], cols=0)
        return column_echelon(ExactMatrix.from_cols(f, vecs))

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _det(self.data, self.field)

    def inverse(self) -> "ExactMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = self.hstack(ExactMatrix.identity(self.field, n))
        red, piv = aug.rref()
        if len(piv) < n or any(p >= n for p in piv):
            raise ValueError("matrix is singular")
        return red.take_cols(range(n, 2 * n))

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


def column_echelon(m: ExactMatrix) -> ExactMatrix:
    """Reduced column echelon form with zero columns dropped.

    This is the canonical representative of the column span: two matrices
    have the same column span iff their reduced column echelon forms are
    equal entry-for-entry.
    """
    red, piv = m.transpose().rref()
    kept = red.data[: len(piv)]
    if not kept:
        return ExactMatrix(m.field, [[] for _ in range(m.rows)], cols=0)
    return ExactMatrix(m.field, kept, cols=m.rows).transpose()


def maximal_minors(m: ExactMatrix):
    """All maximal (row-count sized) minors over column subsets.

    Yields ``(col_tuple, value)`` in lexicographic column order.
    """
    from itertools import combinations

    r = m.rows
    for cols in combinations(range(m.cols), r):
        yield cols, _det([[m.data[i][j] for j in cols] for i in range(r)], m.field)


# -- internals --------------------------------------------------------------


def _generic_rref(rows, f, reduced: bool = True):
    """In-place RREF over any ops-style field; returns pivot columns."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    piv = []
    pr = 0
    for pc in range(ncols):
        sel = -1
        for i in range(pr, nrows):
            if not f.is_zero(rows[i][pc]):
                sel = i
                break
        if sel < 0:
            continue
        if sel != pr:
            rows[pr], rows[sel] = rows[sel], rows[pr]
        inv = f.inv(rows[pr][pc])
        if not f.eq(inv, f.one):
            rows[pr] = [f.mul(inv, x) for x in rows[pr]]
        rng = range(nrows) if reduced else range(pr + 1, nrows)
        prow = rows[pr]
        for i in rng:
            if i == pr:
                continue
            c = rows[i][pc]
            if f.is_zero(c):
                continue
            rows[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(rows[i], prow)]
        piv.append(pc)
        pr += 1
        if pr == nrows:
            break
    return tuple(piv)


def _det(data, f):
    n = len(data)
    if n == 0:
        return f.one
    rows = [list(r) for r in data]
    acc = f.one
    sign = False
    for pc in range(n):
        sel = -1
        for i in range(pc, n):
            if not f.is_zero(rows[i][pc]):
                sel = i
                break
        if sel < 0:
            return f.zero
        if sel != pc:
            rows[pc], rows[sel] = rows[sel], rows[pc]
            sign = not sign
        pv = rows[pc][pc]
        acc = f.mul(acc, pv)
        inv = f.inv(pv)
        for i in range(pc + 1, n):
            c = rows[i][pc]
            if f.is_zero(c):
                continue
            factor = f.mul(c, inv)
            rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], rows[pc])]
    return f.neg(acc) if sign else acc


def _to_np(m: ExactMatrix) -> np.ndarray:
    return np.array(m.data, dtype=np.int64).reshape(m.rows, m.cols)


def _from_np(field, arr: np.ndarray) -> ExactMatrix:
    return ExactMatrix(field, [[int(x) for x in row] for row in arr], cols=arr.shape[1])


def _mod_rref(a: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """RREF over F_p on an int64 array; exact since p < 2**31."""
    a = a % p
    nrows, ncols = a.shape
    piv = []
    pr = 0
    for pc in range(ncols):
        col = a[pr:, pc]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        sel = pr + int(nz[0])
        if sel != pr:
            a[[pr, sel]] = a[[sel, pr]]
        inv = pow(int(a[pr, pc]), p - 2, p)
        a[pr] = a[pr] * inv % p
        mask = np.ones(nrows, dtype=bool)
        mask[pr] = False
        factors = a[mask, pc]
        if np.any(factors):
            a[mask] = (a[mask] - np.outer(factors, a[pr])) % p
        piv.append(pc)
        pr += 1
        if pr == nrows:
            break
    return a, tuple(piv)
