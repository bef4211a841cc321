"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Matrices are small immutable dense
containers; the heavy lifting is done by a fraction-free (Bareiss) elimination
on integer rows held in numpy ``object`` arrays, so Python's arbitrary
precision integers are used throughout and no floating point ever appears.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

Scalar = Fraction


def as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


class Matrix:
    """Immutable dense matrix of exact rationals, stored row-major."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_scalar(x) for x in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self._entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return self._entries

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    T = property(transpose)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self._entries, other._entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self._entries, other._entries)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self._entries])

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        return Matrix(self.rows, self.cols, [c * a for a in self._entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        ocols = [other.column(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for col in ocols:
                out.append(sum((a * b for a, b in zip(r, col) if a and b), Fraction(0)))
        return Matrix(self.rows, other.cols, out)

    def __pow__(self, k: int) -> "Matrix":
        if self.rows != self.cols or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self._entries[i * self.cols + j] for i in range(self.rows))

    def is_zero(self) -> bool:
        return not any(self._entries)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return Matrix.from_rows([list(self.row(i)) + list(other.row(i)) for i in range(self.rows)],
                                self.cols + other.cols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return Matrix(self.rows + other.rows, self.cols, self._entries + other._entries)

    def integer_rows(self) -> np.ndarray:
        """Rows scaled by their denominators' lcm; same row space, integer entries."""
        out = np.zeros((self.rows, self.cols), dtype=object)
        for i in range(self.rows):
            r = self.row(i)
            den = lcm(*(x.denominator for x in r)) if r else 1
            for j, x in enumerate(r):
                out[i, j] = x.numerator * (den // x.denominator)
        return out


# ---------------------------------------------------------------------------
# integer kernels


def _as_object_array(a) -> np.ndarray:
    arr = np.array(a, dtype=object)
    if arr.ndim != 2:
        arr = arr.reshape(len(a), -1) if len(a) else np.zeros((0, 0), dtype=object)
    return arr


def bareiss_echelon(a) -> tuple[np.ndarray, list[int]]:
    """Fraction-free forward elimination of an integer matrix.

    Returns ``(E, pivots)`` where the first ``len(pivots)`` rows of ``E`` are an
    integer row-echelon basis of the row space of ``a`` and ``pivots[i]`` is the
    pivot column of row ``i``.  Pivot choice is the first nonzero entry in
    scan order, so the result depends only on the input.
    """
    m = _as_object_array(a).copy()
    nrows, ncols = m.shape
    r = 0
    prev = 1
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        col = m[r:, c]
        nz = np.flatnonzero(col != 0)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        piv = m[r, c]
        if r + 1 < nrows:
            below = m[r + 1:, c].copy()
            block = m[r + 1:, c:]
            # exact by Sylvester's identity
            m[r + 1:, c:] = (piv * block - below[:, None] * m[r, c:][None, :]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def integer_rank(a) -> int:
    arr = _as_object_array(a)
    if arr.size == 0:
        return 0
    arr = dedupe_rows(arr)
    if arr.shape[0] > arr.shape[1]:
        arr = arr.T.copy()
    return len(bareiss_echelon(arr)[1])


def _primitive(row: np.ndarray) -> np.ndarray:
    g = 0
    for x in row:
        if x:
            g = gcd(g, int(x))
    if g > 1:
        row = row // g
    nz = np.flatnonzero(row != 0)
    if nz.size and row[nz[0]] < 0:
        row = -row
    return row


def dedupe_rows(a: np.ndarray) -> np.ndarray:
    """Drop zero rows and rows proportional to an earlier row."""
    seen = set()
    keep = []
    for i in range(a.shape[0]):
        r = a[i]
        if not np.any(r != 0):
            continue
        key = tuple(_primitive(r))
        if key in seen:
            continue
        seen.add(key)
        keep.append(np.array(key, dtype=object))
    if not keep:
        return np.zeros((0, a.shape[1]), dtype=object)
    return np.vstack(keep)


def integer_rref(a) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon basis (as Fractions) of the row space of an integer matrix."""
    arr = _as_object_array(a)
    if arr.size == 0:
        return [], []
    ech, pivots = bareiss_echelon(dedupe_rows(arr))
    rows = [[Fraction(int(x)) for x in ech[i]] for i in range(len(pivots))]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        p = rows[i][c]
        rows[i] = [x / p for x in rows[i]]
        for k in range(i):
            f = rows[k][c]
            if f:
                ri = rows[i]
                rows[k] = [x - f * y for x, y in zip(rows[k], ri)]
    return rows, pivots


# ---------------------------------------------------------------------------
# public operations


def rank(m: Matrix) -> int:
    """Exact rank over the rationals (0 for an empty matrix)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return integer_rank(m.integer_rows())


def row_space_basis(m: Matrix) -> Matrix:
    """Reduced row-echelon matrix whose rows span the row space of ``m``."""
    if m.rows == 0 or m.cols == 0:
        return Matrix(0, m.cols, [])
    rows, _ = integer_rref(m.integer_rows())
    return Matrix(len(rows), m.cols, [x for r in rows for x in r])


def pivot_columns(rref: Matrix) -> list[int]:
    out = []
    for i in range(rref.rows):
        for j, x in enumerate(rref.row(i)):
            if x:
                out.append(j)
                break
    return out


def inverse(m: Matrix) -> Matrix:
    """Inverse of a square matrix by Gauss-Jordan over the rationals."""
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse needs a square matrix")
    aug = [list(m.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c]), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return Matrix(n, n, [x for r in aug for x in r[n:]])


class SpanSolver:
    """Repeated coordinate extraction against a fixed set of independent rows."""

    def __init__(self, basis: Matrix):
        self.basis = basis
        if basis.rows:
            _, pivots = integer_rref(basis.integer_rows())
        else:
            pivots = []
        if len(pivots) != basis.rows:
            raise ValueError("basis rows are linearly dependent")
        self.pivots = pivots
        sub = Matrix.from_rows([[basis[i, c] for c in pivots] for i in range(basis.rows)],
                               basis.rows)
        self._inv = inverse(sub) if basis.rows else Matrix(0, 0, [])

    def solve(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Coefficients ``c`` with ``c @ basis == v``, or ``None`` outside the span."""
        n = self.basis.rows
        vp = [as_scalar(v[c]) for c in self.pivots]
        coeffs = tuple(sum((vp[i] * self._inv[i, j] for i in range(n) if vp[i]), Fraction(0))
                       for j in range(n))
        for c in range(self.basis.cols):
            x = sum((coeffs[i] * self.basis[i, c] for i in range(n) if coeffs[i]), Fraction(0))
            if x != as_scalar(v[c]):
                return None
        return coeffs


def solve_in_row_space(basis: Matrix, v: Sequence) -> tuple[Fraction, ...] | None:
    """Coefficients ``c`` with ``c @ basis == v``; ``None`` if ``v`` is not in the span.

    ``basis`` must have linearly independent rows.
    """
    return SpanSolver(basis).solve(v)
