"""Dense exact square matrices and principal-minor sums.

Python-level indexing (``M[i, j]``, ``M.column(j)``) is 0-based.  The named
minor-sum and substitution functions take 1-based indices, matching the
usual mathematical statement of those quantities.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InputError, SingularMatrix
from .exactmath import format_scalar, parse_scalar


class DenseMatrix:
    """Immutable n×n matrix of Fractions, row-major."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        grid = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(grid)
        if n == 0:
            raise InputError("matrix must be at least 1×1")
        for r in grid:
            if len(r) != n:
                raise InputError(f"matrix is not square: row of length {len(r)} in {n}×{n}")
        object.__setattr__(self, "rows", grid)

    def __setattr__(self, name, value):
        raise AttributeError("DenseMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> DenseMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> DenseMatrix:
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence) -> DenseMatrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block_diagonal(cls, blocks: Sequence[DenseMatrix]) -> DenseMatrix:
        n = sum(b.n for b in blocks)
        out = [[Fraction(0)] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.n):
                for j in range(b.n):
                    out[off + i][off + j] = b.rows[i][j]
            off += b.n
        return cls(out)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.rows]

    def transpose(self) -> DenseMatrix:
        return DenseMatrix(zip(*self.rows))

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.rows)
        return f"DenseMatrix([{body}])"

    def __add__(self, other: DenseMatrix) -> DenseMatrix:
        self._check_same(other)
        return DenseMatrix(
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        )

    def __sub__(self, other: DenseMatrix) -> DenseMatrix:
        self._check_same(other)
        return DenseMatrix(
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        )

    def __neg__(self):
        return DenseMatrix([-a for a in r] for r in self.rows)

    def scale(self, c) -> DenseMatrix:
        c = Fraction(c)
        return DenseMatrix([c * a for a in r] for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, DenseMatrix):
            self._check_same(other)
            cols = list(zip(*other.rows))
            return DenseMatrix(
                [sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
                for r in self.rows
            )
        vec = list(other)
        if len(vec) != self.n:
            raise InputError(f"vector of length {len(vec)} for {self.n}×{self.n} matrix")
        return [sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.rows]

    def _check_same(self, other: DenseMatrix):
        if other.n != self.n:
            raise InputError(f"dimension mismatch: {self.n} vs {other.n}")

    def submatrix(self, idx: Sequence[int]) -> DenseMatrix:
        """Principal submatrix on 0-based indices ``idx``."""
        return DenseMatrix([[self.rows[i][j] for j in idx] for i in idx])

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.n)), Fraction(0))


def matrix_from_strings(rows) -> DenseMatrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix must be a non-empty list of rows")
    return DenseMatrix([[parse_scalar(x) for x in r] for r in rows])


def matrix_to_strings(M: DenseMatrix) -> list[list[str]]:
    return [[format_scalar(x) for x in r] for r in M.rows]


def determinant(M: DenseMatrix) -> Fraction:
    """Bareiss fraction-free elimination; every division is exact."""
    a = [list(r) for r in M.rows]
    n = len(a)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def inverse(M: DenseMatrix) -> DenseMatrix:
    """Gauss-Jordan inverse; raises :class:`SingularMatrix` when det = 0."""
    n = M.n
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise SingularMatrix(determinant(M))
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return DenseMatrix(r[n:] for r in a)


def laplace_determinant(entries: Sequence[Sequence], zero, one):
    """Cofactor expansion along rows, memoized on the remaining column set.

    Works over any commutative ring whose elements support ``+ - *``
    (Fractions, polynomials).  Used as an elimination-free reference.
    """
    n = len(entries)
    memo: dict = {}

    def rec(r: int, cols: tuple[int, ...]):
        if r == n:
            return one
        key = (r, cols)
        if key in memo:
            return memo[key]
        acc = zero
        for pos, c in enumerate(cols):
            e = entries[r][c]
            if e == 0:
                continue
            term = e * rec(r + 1, cols[:pos] + cols[pos + 1:])
            acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return rec(0, tuple(range(n)))


def _check_order(M: DenseMatrix, k: int):
    if not isinstance(k, int) or not 1 <= k <= M.n:
        raise InputError(f"minor order k={k} outside 1..{M.n}")


def principal_minor_sum(M: DenseMatrix, k: int) -> Fraction:
    """Sum of all order-k principal minors, by enumerating index sets."""
    _check_order(M, k)
    return sum(
        (determinant(M.submatrix(S)) for S in combinations(range(M.n), k)),
        Fraction(0),
    )


def principal_minor_sum_through_column(M: DenseMatrix, k: int, i: int) -> Fraction:
    """Sum of order-k principal minors whose index set contains column ``i`` (1-based)."""
    _check_order(M, k)
    if not isinstance(i, int) or not 1 <= i <= M.n:
        raise InputError(f"column index i={i} outside 1..{M.n}")
    c = i - 1
    others = [j for j in range(M.n) if j != c]
    total = Fraction(0)
    for rest in combinations(others, k - 1):
        S = sorted((c,) + rest)
        total += determinant(M.submatrix(S))
    return total


def substitute_column(M: DenseMatrix, i: int, v: Sequence) -> DenseMatrix:
    """Copy of ``M`` with column ``i`` (1-based) replaced by ``v``."""
    if not isinstance(i, int) or not 1 <= i <= M.n:
        raise InputError(f"column index i={i} outside 1..{M.n}")
    v = list(v)
    if len(v) != M.n:
        raise InputError(f"column of length {len(v)} for {M.n}×{M.n} matrix")
    c = i - 1
    return DenseMatrix(
        [v[r] if j == c else x for j, x in enumerate(row)] for r, row in enumerate(M.rows)
    )


def matrix_power_table(M: DenseMatrix, upto: int) -> list[DenseMatrix]:
    """``[M**0, M**1, ..., M**upto]``."""
    out = [DenseMatrix.identity(M.n)]
    for _ in range(upto):
        out.append(out[-1] @ M)
    return out


def evaluate_poly_at_matrix(coeffs: Sequence, M: DenseMatrix) -> DenseMatrix:
    """Horner evaluation of an ascending coefficient list at a matrix."""
    acc = DenseMatrix.zero(M.n)
    eye = DenseMatrix.identity(M.n)
    for c in reversed(list(coeffs)):
        acc = acc @ M + eye.scale(c)
    return acc
