"""Rational canonical form via the Smith normal form of λI − B.

The transform P is recovered from the row transform of the Smith reduction:
column t of U⁻¹ is a polynomial vector w(λ) whose right-substitution
w(B) = Σ_m B^m w_m is a cyclic generator g_t of the t-th invariant
subspace.  Each nonconstant invariant factor s_t of degree d contributes d
basis columns built from g_t so that B acts on them exactly as the
companion matrix with ones on the superdiagonal and the negated
coefficients in the last row.  The result is checked (P⁻¹BP = C) before it
is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .charpoly import lambda_matrix_entries
from .errors import InputError, InternalConsistencyError, SingularMatrix
from .exactmath import UniPoly, poly_divmod, poly_to_strings
from .matrixcore import (
    DenseMatrix,
    inverse,
    laplace_determinant,
    matrix_power_table,
    matrix_to_strings,
)


class PolyMatrix:
    """Immutable square matrix of :class:`UniPoly` entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        grid = tuple(
            tuple(x if isinstance(x, UniPoly) else UniPoly.constant(x) for x in r)
            for r in rows
        )
        n = len(grid)
        if any(len(r) != n for r in grid):
            raise InputError("polynomial matrix is not square")
        object.__setattr__(self, "rows", grid)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> PolyMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def characteristic(cls, B: DenseMatrix) -> PolyMatrix:
        """λI − B."""
        return cls(lambda_matrix_entries(B))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> UniPoly:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "PolyMatrix(" + repr([[str(p) for p in r] for r in self.rows]) + ")"

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        cols = list(zip(*other.rows))
        return PolyMatrix(
            [sum((a * b for a, b in zip(r, c)), UniPoly()) for c in cols]
            for r in self.rows
        )

    def determinant(self) -> UniPoly:
        return laplace_determinant(self.rows, UniPoly(), UniPoly.constant(1))

    def is_unimodular(self) -> bool:
        d = self.determinant()
        return d.degree == 0

    def is_diagonal(self) -> bool:
        return all(
            self.rows[i][j].is_zero()
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )

    def diagonal(self) -> list[UniPoly]:
        return [self.rows[i][i] for i in range(self.n)]


@dataclass(frozen=True)
class CompanionBlock:
    poly: UniPoly

    def __post_init__(self):
        if not self.poly.is_monic() or self.poly.degree < 1:
            raise InputError(f"companion block needs a monic nonconstant polynomial, got {self.poly}")

    @property
    def size(self) -> int:
        return self.poly.degree

    def matrix(self) -> DenseMatrix:
        return companion(self.poly)


def companion(p: UniPoly) -> DenseMatrix:
    """Ones on the superdiagonal, last row ``(-d_n, ..., -d_1)``.

    Writing p = λ^n + d_1 λ^(n-1) + ... + d_n, the last row holds the
    ascending coefficients negated: ``[-p[0], -p[1], ..., -p[n-1]]``.
    """
    if not isinstance(p, UniPoly) or p.degree < 1 or not p.is_monic():
        raise InputError(f"companion matrix needs a monic polynomial of degree ≥ 1, got {p}")
    n = p.degree
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = Fraction(1)
    for j in range(n):
        rows[n - 1][j] = -p[j]
    return DenseMatrix(rows)


class _Work:
    """Mutable state for one Smith reduction: A, U, U⁻¹, V as lists of lists."""

    def __init__(self, A: PolyMatrix):
        n = A.n
        one, zero = UniPoly.constant(1), UniPoly()
        self.n = n
        self.A = [list(r) for r in A.rows]
        self.U = [[one if i == j else zero for j in range(n)] for i in range(n)]
        self.Uinv = [[one if i == j else zero for j in range(n)] for i in range(n)]
        self.V = [[one if i == j else zero for j in range(n)] for i in range(n)]

    # row operations act on A and U from the left; U⁻¹ gets the inverse from the right

    def swap_rows(self, i, j):
        if i == j:
            return
        for M in (self.A, self.U):
            M[i], M[j] = M[j], M[i]
        for r in self.Uinv:
            r[i], r[j] = r[j], r[i]

    def scale_row(self, i, c: Fraction):
        for M in (self.A, self.U):
            M[i] = [x * c for x in M[i]]
        inv = 1 / c
        for r in self.Uinv:
            r[i] = r[i] * inv

    def add_row_multiple(self, dst, src, q: UniPoly):
        """row_dst += q · row_src."""
        for M in (self.A, self.U):
            M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        for r in self.Uinv:
            r[src] = r[src] - q * r[dst]

    def swap_cols(self, i, j):
        if i == j:
            return
        for M in (self.A, self.V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_col_multiple(self, dst, src, q: UniPoly):
        """col_dst += q · col_src."""
        for M in (self.A, self.V):
            for r in M:
                r[dst] = r[dst] + q * r[src]


def _find_pivot(A, t, n):
    best = None
    for i in range(t, n):
        for j in range(t, n):
            e = A[i][j]
            if e.is_zero():
                continue
            if best is None or e.degree < A[best[0]][best[1]].degree:
                best = (i, j)
    return best


def _smith(A: PolyMatrix) -> _Work:
    w = _Work(A)
    n = w.n
    for t in range(n):
        while True:
            piv = _find_pivot(w.A, t, n)
            if piv is None:
                return w
            w.swap_rows(t, piv[0])
            w.swap_cols(t, piv[1])
            lead = w.A[t][t].leading
            if lead != 1:
                w.scale_row(t, 1 / lead)
            p = w.A[t][t]
            clean = True
            for i in range(t + 1, n):
                if w.A[i][t].is_zero():
                    continue
                q, r = poly_divmod(w.A[i][t], p)
                w.add_row_multiple(i, t, -q)
                clean = clean and r.is_zero()
            for j in range(t + 1, n):
                if w.A[t][j].is_zero():
                    continue
                q, r = poly_divmod(w.A[t][j], p)
                w.add_col_multiple(j, t, -q)
                clean = clean and r.is_zero()
            if not clean:
                continue
            bad = next(
                (
                    i
                    for i in range(t + 1, n)
                    for j in range(t + 1, n)
                    if not poly_divmod(w.A[i][j], p)[1].is_zero()
                ),
                None,
            )
            if bad is None:
                break
            w.add_row_multiple(t, bad, UniPoly.constant(1))
    return w


def smith_normal_form(A: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix, PolyMatrix]:
    """Return ``(S, U, V)`` with ``U·A·V = S`` and monic s_1 | s_2 | ... on the diagonal.

    Pivot: nonzero entry of least degree in the trailing submatrix, ties to
    the smallest (row, column).
    """
    w = _smith(A)
    return PolyMatrix(w.A), PolyMatrix(w.U), PolyMatrix(w.V)


@dataclass(frozen=True)
class RcfResult:
    blocks: tuple[CompanionBlock, ...]
    P: DenseMatrix
    P_inv: DenseMatrix

    @property
    def offsets(self) -> list[int]:
        out, acc = [], 0
        for b in self.blocks:
            out.append(acc)
            acc += b.size
        return out

    @property
    def polys(self) -> list[UniPoly]:
        return [b.poly for b in self.blocks]

    def matrix(self) -> DenseMatrix:
        return DenseMatrix.block_diagonal([b.matrix() for b in self.blocks])

    def to_json(self) -> dict:
        return {
            "blocks": [poly_to_strings(b.poly) for b in self.blocks],
            "sizes": [b.size for b in self.blocks],
            "offsets": self.offsets,
            "C": matrix_to_strings(self.matrix()),
            "P": matrix_to_strings(self.P),
            "P_inv": matrix_to_strings(self.P_inv),
        }


def _right_substitute(column: Sequence[UniPoly], powers: list[DenseMatrix]) -> list[Fraction]:
    """Σ_m B^m w_m for a polynomial vector w(λ) = Σ_m w_m λ^m."""
    n = len(column)
    out = [Fraction(0)] * n
    top = max((len(p.coeffs) for p in column), default=0)
    for m in range(top):
        wm = [p[m] for p in column]
        if not any(wm):
            continue
        v = powers[m] @ wm
        out = [a + b for a, b in zip(out, v)]
    return out


def _block_basis(B: DenseMatrix, g: list[Fraction], p: UniPoly) -> list[list[Fraction]]:
    """Columns q_1..q_d with B q_1 = -d_d q_d and B q_j = q_(j-1) - d_(d+1-j) q_d."""
    d = p.degree
    cols = [None] * d
    cols[d - 1] = list(g)
    for j in range(d - 1, 0, -1):
        # ascending index of d_(d-j) is j
        Bq = B @ cols[j]
        cols[j - 1] = [a + p[j] * b for a, b in zip(Bq, g)]
    return cols


def rational_canonical_form(B: DenseMatrix) -> RcfResult:
    w = _smith(PolyMatrix.characteristic(B))
    n = B.n
    diag = [w.A[i][i] for i in range(n)]
    top = max(max((len(e.coeffs) for e in r), default=0) for r in w.Uinv)
    powers = matrix_power_table(B, max(top, 1))

    blocks: list[CompanionBlock] = []
    columns: list[list[Fraction]] = []
    for t, s in enumerate(diag):
        if s.degree == 0:
            continue
        if s.is_zero():
            raise InternalConsistencyError("λI − B reduced to a singular diagonal")
        g = _right_substitute([w.Uinv[i][t] for i in range(n)], powers)
        blocks.append(CompanionBlock(s))
        columns.extend(_block_basis(B, g, s))

    if len(columns) != n:
        raise InternalConsistencyError(
            f"invariant factor degrees sum to {len(columns)}, expected {n}"
        )
    P = DenseMatrix(zip(*columns))
    try:
        P_inv = inverse(P)
    except SingularMatrix as exc:
        raise InternalConsistencyError("recovered transform P is singular") from exc
    result = RcfResult(tuple(blocks), P, P_inv)
    _verify(B, result)
    return result


def _verify(B: DenseMatrix, r: RcfResult) -> None:
    polys = r.polys
    for a, b in zip(polys, polys[1:]):
        if not a.divides(b):
            raise InternalConsistencyError(f"invariant factors out of order: {a} ∤ {b}")
    if r.P @ r.P_inv != DenseMatrix.identity(B.n):
        raise InternalConsistencyError("P · P⁻¹ ≠ I")
    if r.P_inv @ B @ r.P != r.matrix():
        raise InternalConsistencyError("P⁻¹ B P differs from the block companion form")
