"""Characteristic polynomial det(λI − B) by three independent routes.

``charpoly_via_minors`` builds the coefficients from principal-minor sums,
``charpoly_faddeev`` runs the Faddeev-LeVerrier trace recursion and
``charpoly_symbolic`` expands the λ-matrix determinant by cofactors.  None
of them calls another.
"""

from __future__ import annotations

from fractions import Fraction

from .exactmath import UniPoly
from .matrixcore import DenseMatrix, laplace_determinant, principal_minor_sum


def minor_sums(B: DenseMatrix) -> list[Fraction]:
    """``[δ_1(B), ..., δ_n(B)]``."""
    return [principal_minor_sum(B, k) for k in range(1, B.n + 1)]


def charpoly_via_minors(B: DenseMatrix) -> UniPoly:
    n = B.n
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    for k, delta in enumerate(minor_sums(B), start=1):
        # coefficient of λ^(n-k) is (-1)^k δ_k
        coeffs[n - k] = -delta if k % 2 else delta
    return UniPoly(coeffs)


def charpoly_faddeev(B: DenseMatrix) -> UniPoly:
    """Faddeev-LeVerrier; requires characteristic zero (true over ℚ)."""
    n = B.n
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    eye = DenseMatrix.identity(n)
    M = DenseMatrix.zero(n)
    for k in range(1, n + 1):
        M = B @ M + eye.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(B @ M).trace() / k
    return UniPoly(coeffs)


def lambda_matrix_entries(B: DenseMatrix) -> list[list[UniPoly]]:
    """Entries of λI − B as polynomials."""
    n = B.n
    return [
        [UniPoly((-B[i, j], 1)) if i == j else UniPoly((-B[i, j],)) for j in range(n)]
        for i in range(n)
    ]


def charpoly_symbolic(B: DenseMatrix) -> UniPoly:
    return laplace_determinant(
        lambda_matrix_entries(B), UniPoly(), UniPoly.constant(1)
    )
