##########################################################################
# Wiener-Hopf index toolkit: cone strata, index complexes, cone metrics
# Copyright (C) 2024  Amelia Dobis
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
##########################################################################

# Exact rational linear algebra and integer Smith normal form.
#
# Everything here works over the rationals (fractions.Fraction) with the
# standard inner product; no floating point is involved. Matrices are small
# (a few hundred rows at most), so plain Gaussian elimination is enough.

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union
import logging

from .errors import DependentColumnsError, DimensionMismatchError

logger = logging.getLogger(__name__)

RationalVector = tuple[Fraction, ...]
Scalar = Union[int, str, Fraction]

## Scalars and vectors ##

# Parses "p/q" or an integer string into an exact rational
# Raises ValueError on anything else, including a zero denominator.
def parse_rational(text: str) -> Fraction:
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational number: {text!r}") from None
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(n, d)

def to_rational(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    return Fraction(x)

def vector(xs: Iterable[Scalar]) -> RationalVector:
    return tuple(to_rational(x) for x in xs)

def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    assert len(u) == len(v), f"dot product of vectors of length {len(u)} and {len(v)}"
    return sum((a * b for a, b in zip(u, v)), Fraction(0))

def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> RationalVector:
    return tuple(a + b for a, b in zip(u, v))

def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> RationalVector:
    return tuple(a - b for a, b in zip(u, v))

def scale(c: Fraction, v: Sequence[Fraction]) -> RationalVector:
    return tuple(c * a for a in v)

def is_zero(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)

# The positive multiple of v with coprime integer entries
# Used as the canonical representative of the ray through v.
def primitive(v: Sequence[Fraction]) -> RationalVector:
    if is_zero(v):
        return tuple(Fraction(0) for _ in v)
    den = lcm(*(Fraction(a).denominator for a in v))
    ints = [int(a * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(Fraction(a // g) for a in ints)

def to_strings(v: Sequence[Fraction]) -> list[str]:
    return [str(a) for a in v]


## Matrices ##

# Dense row-major rational matrix
# @param rows: number of rows
# @param cols: number of columns
# @param entries: the rows*cols entries in row-major order
@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        assert len(self.entries) == self.rows * self.cols, \
            f"matrix of shape {self.rows}x{self.cols} given {len(self.entries)} entries"

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: int = None) -> "RationalMatrix":
        rows = [vector(r) for r in rows]
        if cols is None:
            assert len(rows) > 0, "cannot infer the column count of an empty matrix"
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatchError(f"row of length {len(r)} in a matrix with {cols} columns")
        return cls(len(rows), cols, tuple(a for r in rows for a in r))

    # Builds a matrix whose columns are the given vectors
    # @param rows: the ambient dimension, needed when there are no columns
    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: int = None) -> "RationalMatrix":
        columns = [vector(c) for c in columns]
        if rows is None:
            assert len(columns) > 0, "cannot infer the row count of an empty matrix"
            rows = len(columns[0])
        if len(columns) == 0:
            return cls(rows, 0, ())
        return cls.from_rows(columns, rows).transpose()

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, tuple(Fraction(0) for _ in range(rows * cols)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> RationalVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> RationalVector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[RationalVector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows,
                              tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = other.columns()
        return RationalMatrix(self.rows, other.cols,
                              tuple(dot(self.row(i), c) for i in range(self.rows) for c in cols))

    # Matrix-vector product
    def apply(self, v: Sequence[Fraction]) -> RationalVector:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"cannot apply {self.rows}x{self.cols} to a vector of length {len(v)}")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack of matrices with different row counts")
        return RationalMatrix.from_columns(self.columns() + other.columns(), self.rows)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def to_strings(self) -> list[list[str]]:
        return [to_strings(self.row(i)) for i in range(self.rows)]


## Elimination ##

# Gaussian elimination in place over the rationals
# @param rows: list of mutable rows, all of length ncols
# @param reduced: also clear entries above the pivots (reduced row echelon form)
# Returns the pivot columns.
def _eliminate(rows: list[list[Fraction]], ncols: int, reduced: bool = True) -> list[int]:
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        if pivot_row[c] != 1:
            inv = Fraction(1) / pivot_row[c]
            pivot_row = [a * inv for a in pivot_row]
            rows[r] = pivot_row
        # Only the nonzero part of the pivot row takes part in the updates
        support = [k for k in range(c, ncols) if pivot_row[k] != 0]
        for i in (range(nrows) if reduced else range(r + 1, nrows)):
            if i == r:
                continue
            f = rows[i][c]
            if f == 0:
                continue
            row_i = rows[i]
            for k in support:
                row_i[k] -= f * pivot_row[k]
        pivots.append(c)
        r += 1
    return pivots

# Reduced row echelon form, returned together with the pivot columns
def rref(M: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    rows = M.row_list()
    pivots = _eliminate(rows, M.cols)
    return RationalMatrix(M.rows, M.cols, tuple(a for r in rows for a in r)), pivots

def rank(M: RationalMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(_eliminate(M.row_list(), M.cols, reduced=False))

# Basis of ker M, one basis vector per column
def nullspace(M: RationalMatrix) -> RationalMatrix:
    n = M.cols
    if M.rows == 0:
        return RationalMatrix.identity(n)
    R, pivots = rref(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        b = [Fraction(0)] * n
        b[f] = Fraction(1)
        for i, p in enumerate(pivots):
            b[p] = -R[i, f]
        basis.append(b)
    return RationalMatrix.from_columns(basis, n)

# Basis of S⊥ where S is spanned by the (independent) columns of B
def orthogonal_complement(B: RationalMatrix) -> RationalMatrix:
    if rank(B) != B.cols:
        raise DependentColumnsError(f"{B.cols} columns spanning a space of dimension {rank(B)}")
    if B.cols == 0:
        return RationalMatrix.identity(B.rows)
    return nullspace(B.transpose())

# Indices of a maximal independent subset of the columns, greedy from the left
def independent_columns(M: RationalMatrix) -> list[int]:
    if M.rows == 0 or M.cols == 0:
        return []
    return _eliminate(M.row_list(), M.cols, reduced=False)

# Column span of M as a matrix with independent columns
def column_basis(M: RationalMatrix) -> RationalMatrix:
    keep = independent_columns(M)
    return RationalMatrix.from_columns([M.column(j) for j in keep], M.rows)

# True iff the two matrices have the same column span
def same_span(A: RationalMatrix, B: RationalMatrix) -> bool:
    if A.rows != B.rows:
        return False
    r = rank(A)
    return r == rank(B) and r == rank(A.hstack(B))

# Coordinates X with B·X = T
# @param B: matrix with independent columns
# @param T: targets, every column must lie in the column span of B
def solve_in_basis(B: RationalMatrix, T: RationalMatrix) -> RationalMatrix:
    k = B.cols
    aug = B.hstack(T)
    R, pivots = rref(aug)
    if pivots[:k] != list(range(k)):
        raise DependentColumnsError("basis columns are dependent")
    if len(pivots) > k:
        raise ValueError("target vector outside the column span of the basis")
    return RationalMatrix.from_rows([[R[i, k + j] for j in range(T.cols)] for i in range(k)], T.cols)

def determinant(M: RationalMatrix) -> Fraction:
    assert M.rows == M.cols, f"determinant of a non-square {M.rows}x{M.cols} matrix"
    rows = M.row_list()
    n = M.rows
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        pivot = rows[c][c]
        det *= pivot
        for i in range(c + 1, n):
            f = rows[i][c] / pivot
            if f != 0:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det

def inverse(M: RationalMatrix) -> RationalMatrix:
    n = M.rows
    assert n == M.cols, "inverse of a non-square matrix"
    R, pivots = rref(M.hstack(RationalMatrix.identity(n)))
    if pivots[:n] != list(range(n)):
        raise DependentColumnsError("matrix is singular")
    return RationalMatrix.from_rows([[R[i, n + j] for j in range(n)] for i in range(n)], n)


## Smith normal form ##

# Result of the Smith normal form computation: U·A·V = S
# @param invariant_factors: the nonzero diagonal entries of S, each dividing the next
@dataclass(frozen=True)
class SNFResult:
    U: tuple[tuple[int, ...], ...]
    S: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

def _int_identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]

# Smith normal form of an integer matrix by unimodular row/column operations
# Pivots are always the entry of smallest magnitude, so every reduction
# strictly decreases the pivot until it divides its row, column and the
# remaining block.
def smith_normal_form(A: Sequence[Sequence[int]]) -> SNFResult:
    S = [[int(x) for x in row] for row in A]
    m = len(S)
    n = len(S[0]) if m else 0
    U = _int_identity(m)
    V = _int_identity(n)

    def swap_rows(i: int, j: int):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    # row[target] += q * row[source]
    def add_row(target: int, source: int, q: int):
        S[target] = [a + q * b for a, b in zip(S[target], S[source])]
        U[target] = [a + q * b for a, b in zip(U[target], U[source])]

    # col[target] += q * col[source]
    def add_col(target: int, source: int, q: int):
        for M in (S, V):
            for row in M:
                row[target] += q * row[source]

    t = 0
    while t < min(m, n):
        entries = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j] != 0]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    add_row(i, t, -(S[i][t] // p))
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    add_col(j, t, -(S[t][j] // p))
                    dirty = dirty or S[t][j] != 0
            if dirty:
                # A nonzero remainder is smaller than the pivot: make it the new pivot
                rem = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t] != 0] + \
                      [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j] != 0]
                _, i, j = min(rem)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p != 0), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        t += 1

    factors = tuple(S[i][i] for i in range(min(m, n)) if S[i][i] != 0)
    logger.debug("smith normal form of a %dx%d matrix: invariant factors %s", m, n, factors)
    return SNFResult(
        U=tuple(tuple(r) for r in U),
        S=tuple(tuple(r) for r in S),
        V=tuple(tuple(r) for r in V),
        invariant_factors=factors,
    )
