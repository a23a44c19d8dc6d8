"""Seeded random instances: integer matrices, unimodular transforms, and
matrices with a prescribed multi-block rational canonical form."""

from __future__ import annotations

import random
from fractions import Fraction

from .canonical import companion
from .exactmath import UniPoly
from .matrixcore import DenseMatrix, inverse

LOW, HIGH = -5, 5


def random_int_matrix(rng: random.Random, n: int, low: int = LOW, high: int = HIGH) -> DenseMatrix:
    return DenseMatrix([[rng.randint(low, high) for _ in range(n)] for _ in range(n)])


def random_int_vector(rng: random.Random, n: int, low: int = LOW, high: int = HIGH) -> list[Fraction]:
    return [Fraction(rng.randint(low, high)) for _ in range(n)]


def random_unimodular(rng: random.Random, n: int, steps: int | None = None) -> DenseMatrix:
    """Integer matrix with det ±1, built from elementary row operations."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 3 * n):
        if n == 1:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    perm = list(range(n))
    rng.shuffle(perm)
    return DenseMatrix([rows[p] for p in perm])


def random_monic(rng: random.Random, degree: int, root_range: int = 3) -> UniPoly:
    """Monic polynomial: a product of small linear factors, sometimes with an
    irreducible-over-ℚ quadratic mixed in."""
    p = UniPoly.constant(1)
    d = 0
    while d < degree:
        if degree - d >= 2 and rng.random() < 0.3:
            p = p * UniPoly((rng.randint(1, 3), rng.randint(-1, 1), 1))
            d += 2
        else:
            p = p * UniPoly((-rng.randint(-root_range, root_range), 1))
            d += 1
    return p


def random_invariant_factors(rng: random.Random, n: int) -> list[UniPoly]:
    """Random divisibility chain p_1 | p_2 | ... with degrees summing to n."""
    k = rng.randint(1, n)
    # p_i = f_1 ... f_i with deg f_i = e_i; bumping e_i (0-based) adds k - i to the total
    e = [1] + [0] * (k - 1)
    remaining = n - k
    while remaining > 0:
        i = rng.choice([i for i in range(k) if k - i <= remaining])
        e[i] += 1
        remaining -= k - i
    factors = [random_monic(rng, ei) for ei in e]
    out, acc = [], UniPoly.constant(1)
    for f in factors:
        acc = acc * f
        out.append(acc)
    return out


def random_structured_matrix(rng: random.Random, n: int) -> tuple[DenseMatrix, list[UniPoly]]:
    """Integer matrix similar to diag(companion(p_i)) for a random chain p_i."""
    polys = random_invariant_factors(rng, n)
    C = DenseMatrix.block_diagonal([companion(p) for p in polys])
    Q = random_unimodular(rng, n)
    return Q @ C @ inverse(Q), polys


def random_test_matrix(rng: random.Random, n: int) -> DenseMatrix:
    """Half plain random entries, half planted multi-block structure."""
    if rng.random() < 0.5:
        return random_int_matrix(rng, n)
    return random_structured_matrix(rng, n)[0]
