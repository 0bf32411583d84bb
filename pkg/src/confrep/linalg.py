"""Exact rational matrices: reduced row echelon form, rank, kernels, coordinates."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _size(x: Fraction) -> int:
    x = Fraction(x)
    return x.numerator.bit_length() + x.denominator.bit_length()


class RatMatrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Iterable[Iterable] | None = None):
        self.rows, self.cols = rows, cols
        if data is None:
            self.data = [[Fraction(0)] * cols for _ in range(rows)]
        else:
            self.data = [[Fraction(x) for x in row] for row in data]
            if len(self.data) != rows or any(len(r) != cols for r in self.data):
                raise ValueError(f"data does not have shape {rows}x{cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        return cls(rows, len(columns), [[c[r] for c in columns] for r in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r][c]

    def __setitem__(self, rc, value):
        r, c = rc
        self.data[r][c] = Fraction(value)

    def column(self, c: int) -> list[Fraction]:
        return [self.data[r][c] for r in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, [[self.data[r][c] for r in range(self.rows)] for c in range(self.cols)])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = RatMatrix(self.rows, other.cols)
        ocols = [other.column(c) for c in range(other.cols)]
        for r, row in enumerate(self.data):
            nz = [(k, a) for k, a in enumerate(row) if a]
            for c, col in enumerate(ocols):
                s = Fraction(0)
                for k, a in nz:
                    b = col[k]
                    if b:
                        s += a * b
                out.data[r][c] = s
        return out

    def apply(self, v: Sequence) -> list[Fraction]:
        return [sum((a * Fraction(b) for a, b in zip(row, v) if a and b), Fraction(0)) for row in self.data]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(map(tuple, self.data))))

    def is_identity(self) -> bool:
        return self == RatMatrix.identity(self.rows) if self.rows == self.cols else False

    def trace(self) -> Fraction:
        return sum((self.data[i][i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]

    def rank(self) -> int:
        return len(rref(self.data, self.cols)[1])

    def nullspace(self) -> list[list[Fraction]]:
        return nullspace(self.data, self.cols)

    def __repr__(self):
        return f"RatMatrix({self.rows}, {self.cols}, {[[str(x) for x in r] for r in self.data]})"


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Within each column the pivot row is the one with the smallest entry
    (numerator plus denominator bit length); this only affects speed.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        best, best_size = None, None
        for i in range(r, len(m)):
            x = m[i][c]
            if x:
                s = _size(x)
                if best is None or s < best_size:
                    best, best_size = i, s
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        prow = m[r]
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for k in nz:
                        row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return m[: len(pivots)], pivots


def determinant(rows: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n, det = len(m), Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : A v = 0}, one vector per free column, in column order."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def column_space_complement(columns: Sequence[Sequence], dim: int) -> list[int]:
    """Standard basis indices spanning a complement of span(columns) in Q^dim.

    Row reducing the matrix whose rows are the spanning vectors, the non-pivot
    positions give the complement; pivots are taken left to right so the
    first standard vectors are absorbed into the span first.
    """
    if not columns:
        return list(range(dim))
    _, pivots = rref(columns, dim)
    pivset = set(pivots)
    return [i for i in range(dim) if i not in pivset]


class Reducer:
    """Reduce vectors modulo a subspace W of Q^dim onto a fixed set of free coordinates.

    After reduction a vector agrees with a unique combination of the standard
    basis vectors e_i, i in ``free``, modulo W.
    """

    def __init__(self, spanning: Sequence[Sequence], dim: int):
        self.dim = dim
        self.red, self.pivots = rref(spanning, dim) if spanning else ([], [])
        piv = set(self.pivots)
        self.free = [i for i in range(dim) if i not in piv]
        self._free_pos = {i: k for k, i in enumerate(self.free)}

    def coordinates(self, v: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in v]
        for row, p in zip(self.red, self.pivots):
            f = v[p]
            if f:
                for k in range(p, self.dim):
                    if row[k]:
                        v[k] -= f * row[k]
        return [v[i] for i in self.free]


class Coordinatizer:
    """Coordinates of vectors in span(basis), with a membership check."""

    def __init__(self, basis: Sequence[Sequence], dim: int):
        self.dim = dim
        self.k = len(basis)
        # rows: [b_j^T | e_j^T]; reduce on the first dim columns
        aug = [list(b) + [int(i == j) for i in range(self.k)] for j, b in enumerate(basis)]
        self.red, self.pivots = rref(aug, dim + self.k) if aug else ([], [])
        self.pivots = [p for p in self.pivots if p < dim]
        if len(self.pivots) != self.k:
            raise ValueError("basis vectors are linearly dependent")

    def coordinates(self, v: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in v]
        coords = [Fraction(0)] * self.k
        for row, p in zip(self.red, self.pivots):
            f = v[p]
            if f:
                for k in range(p, self.dim):
                    if row[k]:
                        v[k] -= f * row[k]
                for j in range(self.k):
                    if row[self.dim + j]:
                        coords[j] += f * row[self.dim + j]
        if any(v):
            raise ValueError("vector is not in the span of the basis")
        return coords
