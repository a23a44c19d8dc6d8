"""Partial reduction of A(x) = Bx + φ into per-block higher-order equations.

With C = P⁻¹BP in rational canonical form, ψ = P⁻¹φ and y = P⁻¹x, block i
(offset ℓ, size m, polynomial Δ_i) becomes

    Δ_i(A)(y_{ℓ+1}) = Σ_{k=1}^{m} Σ_{j=1}^{k} d_{k-j} A^{m-k}(ψ_{ℓ+j}),   d_0 = 1
    y_{ℓ+r+1}      = A(y_{ℓ+r}) - ψ_{ℓ+r},                            1 ≤ r < m

The right-hand side is kept as a coefficient table over the formal basis
{A^p(ψ_j)} so it can be rendered or evaluated on any operator backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .canonical import companion, rational_canonical_form
from .errors import InputError
from .exactmath import UniPoly, format_scalar, poly_from_strings, poly_to_strings
from .matrixcore import (
    DenseMatrix,
    matrix_from_strings,
    matrix_to_strings,
    principal_minor_sum_through_column,
    substitute_column,
)


def delta_k1_closed_form(b: Sequence, a: Sequence, k: int):
    """Order-k principal minors through column 1 of ``doubly_companion_transpose_matrix(b, a)``.

    Equals ``(-1)^k (Σ_{j=1}^{k-1} b_j a_{k-j} - b_k)``; both sequences are
    1-based in that formula (``b[0]`` is b_1).  Linear in ``b``.
    """
    n = len(b)
    if len(a) != n - 1:
        raise InputError(f"need len(a) = len(b) - 1, got {len(a)} and {n}")
    if not isinstance(k, int) or not 1 <= k <= n:
        raise InputError(f"k={k} outside 1..{n}")
    s = sum((b[j - 1] * a[k - j - 1] for j in range(1, k)), Fraction(0))
    val = s - b[k - 1]
    return -val if k % 2 else val


def doubly_companion_transpose_matrix(b: Sequence, a: Sequence) -> DenseMatrix:
    """First column b, ones on the superdiagonal, last row (b_n, a_{n-1}, ..., a_1)."""
    n = len(b)
    if len(a) != n - 1:
        raise InputError(f"need len(a) = len(b) - 1, got {len(a)} and {n}")
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][0] = Fraction(b[i])
    for i in range(n - 1):
        rows[i][i + 1] = Fraction(1)
    for c in range(1, n):
        rows[n - 1][c] = Fraction(a[n - c - 1])
    return DenseMatrix(rows)


@dataclass(frozen=True)
class RhsTable:
    """Coefficients of A^power(ψ_j) on the right of one block's higher-order equation.

    ``rows[power][j - 1]`` with power in 0..size-1 and block-local j in 1..size.
    """

    rows: tuple[tuple[Fraction, ...], ...]

    @property
    def block_size(self) -> int:
        return len(self.rows)

    def __getitem__(self, key) -> Fraction:
        power, j = key
        if not (0 <= power < self.block_size and 1 <= j <= self.block_size):
            raise KeyError(key)
        return self.rows[power][j - 1]

    def terms(self) -> list[tuple[int, int, Fraction]]:
        """Nonzero ``(power, j, coeff)`` triples, highest power first."""
        out = []
        for power in range(self.block_size - 1, -1, -1):
            for j in range(1, self.block_size + 1):
                c = self.rows[power][j - 1]
                if c != 0:
                    out.append((power, j, c))
        return out

    @classmethod
    def from_dict(cls, size: int, coeff: dict) -> RhsTable:
        return cls(
            tuple(
                tuple(Fraction(coeff.get((p, j), 0)) for j in range(1, size + 1))
                for p in range(size)
            )
        )


def _d(p: UniPoly, i: int) -> Fraction:
    """d_i of p = λ^n + d_1 λ^(n-1) + ... + d_n, with d_0 = 1."""
    return p[p.degree - i]


def _check_monic(p: UniPoly):
    if not isinstance(p, UniPoly) or p.degree < 1 or not p.is_monic():
        raise InputError(f"expected a monic polynomial of degree ≥ 1, got {p}")


def rhs_table(p: UniPoly) -> RhsTable:
    """Triangular table: coefficient of A^(n-k)(ψ_j) is d_(k-j) for j ≤ k."""
    _check_monic(p)
    n = p.degree
    coeff = {}
    for k in range(1, n + 1):
        for j in range(1, k + 1):
            coeff[(n - k, j)] = _d(p, k - j)
    return RhsTable.from_dict(n, coeff)


def rhs_via_delta_sum(p: UniPoly) -> RhsTable:
    """Same table from Σ_k (-1)^(k+1) δ_k^1(C; A^(n-k)ψ), using the closed form.

    δ_k^1 is linear in the substituted column, so the coefficient of
    A^(n-k)(ψ_j) is (-1)^(k+1) times the closed form at b = e_j.  The
    companion matrix has that shape with a_i = -d_i.
    """
    _check_monic(p)
    n = p.degree
    a = [-_d(p, i) for i in range(1, n)]
    coeff = {}
    for k in range(1, n + 1):
        sign = 1 if k % 2 else -1
        for j in range(1, n + 1):
            e = [Fraction(int(i == j - 1)) for i in range(n)]
            coeff[(n - k, j)] = sign * delta_k1_closed_form(e, a, k)
    return RhsTable.from_dict(n, coeff)


def rhs_via_minor_enumeration(p: UniPoly) -> RhsTable:
    """Same table with δ_k^1 computed by enumerating principal minors of C."""
    _check_monic(p)
    n = p.degree
    C = companion(p)
    coeff = {}
    for k in range(1, n + 1):
        sign = 1 if k % 2 else -1
        for j in range(1, n + 1):
            e = [int(i == j - 1) for i in range(n)]
            coeff[(n - k, j)] = sign * principal_minor_sum_through_column(
                substitute_column(C, 1, e), k, 1
            )
    return RhsTable.from_dict(n, coeff)


@dataclass(frozen=True)
class ChainEquation:
    """y_lhs = A(y_operand) - ψ_psi, global 1-based indices."""

    lhs: int
    operand: int
    psi: int


@dataclass(frozen=True)
class Subsystem:
    offset: int
    poly: UniPoly
    rhs: RhsTable

    @property
    def size(self) -> int:
        return self.poly.degree

    @property
    def leading(self) -> int:
        """Global 1-based index of the unknown in the higher-order equation."""
        return self.offset + 1

    @property
    def chain(self) -> list[ChainEquation]:
        return [
            ChainEquation(self.offset + r + 1, self.offset + r, self.offset + r)
            for r in range(1, self.size)
        ]

    def rhs_terms(self) -> list[tuple[int, int, Fraction]]:
        """RHS terms with global ψ indices."""
        return [(pw, self.offset + j, c) for pw, j, c in self.rhs.terms()]


@dataclass(frozen=True)
class ReducedSystem:
    subsystems: tuple[Subsystem, ...]
    P: DenseMatrix
    P_inv: DenseMatrix

    @property
    def n(self) -> int:
        return self.P.n

    def canonical_matrix(self) -> DenseMatrix:
        return DenseMatrix.block_diagonal([companion(s.poly) for s in self.subsystems])

    def structure(self) -> list[dict]:
        """Transform-independent shape: polynomials, RHS terms, chain links."""
        return [
            {
                "block": i,
                "offset": s.offset,
                "size": s.size,
                "poly": poly_to_strings(s.poly),
                "unknown": s.leading,
                "rhs": [
                    {"power": pw, "psi": j, "coeff": format_scalar(c)}
                    for pw, j, c in s.rhs_terms()
                ],
                "chain": [
                    {"lhs": ce.lhs, "operand": ce.operand, "psi": ce.psi} for ce in s.chain
                ],
            }
            for i, s in enumerate(self.subsystems, start=1)
        ]

    def equations(self) -> list[str]:
        out = []
        for s in self.subsystems:
            out.append(f"{_operator_text(s.poly)}(y{s.leading}) = {_rhs_text(s.rhs_terms())}")
            for ce in s.chain:
                out.append(f"y{ce.lhs} = A(y{ce.operand}) - ψ{ce.psi}")
        return out

    def to_json(self) -> dict:
        blocks = self.structure()
        for entry, s in zip(blocks, self.subsystems):
            entry["rhs_table"] = [[format_scalar(c) for c in row] for row in s.rhs.rows]
        return {
            "n": self.n,
            "subsystems": blocks,
            "equations": self.equations(),
            "C": matrix_to_strings(self.canonical_matrix()),
            "P": matrix_to_strings(self.P),
            "P_inv": matrix_to_strings(self.P_inv),
        }

    @classmethod
    def from_json(cls, data: dict) -> ReducedSystem:
        try:
            P = matrix_from_strings(data["P"])
            P_inv = matrix_from_strings(data["P_inv"])
            subs = []
            for entry in data["subsystems"]:
                poly = poly_from_strings(entry["poly"])
                _check_monic(poly)
                table = RhsTable(
                    tuple(tuple(Fraction(x) for x in row) for row in entry["rhs_table"])
                )
                if table.block_size != poly.degree:
                    raise InputError("rhs_table size does not match block polynomial degree")
                subs.append(Subsystem(int(entry["offset"]), poly, table))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed reduced-system JSON: {exc}") from exc
        red = cls(tuple(subs), P, P_inv)
        _check_tiling(red)
        return red

    def to_latex(self) -> str:
        parts = []
        for i, s in enumerate(self.subsystems, start=1):
            lines = [
                f"{_operator_latex(s.poly)}(y_{{{s.leading}}}) = {_rhs_latex(s.rhs_terms())}"
            ]
            for ce in s.chain:
                lines.append(f"y_{{{ce.lhs}}} = A(y_{{{ce.operand}}}) - \\psi_{{{ce.psi}}}")
            body = " \\\\\n".join(lines)
            parts.append(
                f"\\left\\{{ \\begin{{array}}{{l}}\n{body}\n\\end{{array}} \\right\\}}"
            )
        return "\n\\wedge\n".join(parts) + "\n"


def _check_tiling(red: ReducedSystem):
    pos = 0
    for s in red.subsystems:
        if s.offset != pos:
            raise InputError(f"block offsets do not tile 1..n: expected {pos}, got {s.offset}")
        pos += s.size
    if pos != red.n:
        raise InputError(f"block sizes sum to {pos}, expected {red.n}")


def partially_reduce(B: DenseMatrix) -> ReducedSystem:
    rcf = rational_canonical_form(B)
    subs = tuple(
        Subsystem(off, blk.poly, rhs_table(blk.poly))
        for off, blk in zip(rcf.offsets, rcf.blocks)
    )
    return ReducedSystem(subs, rcf.P, rcf.P_inv)


# rendering helpers


def _power(sym: str, k: int, latex: bool) -> str:
    if k == 0:
        return "I" if sym == "A" else sym
    if k == 1:
        return sym
    return f"{sym}^{{{k}}}" if latex else f"{sym}^{k}"


def _signed_join(items: list[tuple[Fraction, str]], latex: bool) -> str:
    if not items:
        return "0"
    out = ""
    for idx, (c, body) in enumerate(items):
        mag = abs(c)
        coef = "" if mag == 1 else _scalar_text(mag, latex)
        if mag == 1 and body == "":
            coef = "1"
        term = f"{coef}{body}"
        if idx == 0:
            out = ("-" if c < 0 else "") + term
        else:
            out += (" - " if c < 0 else " + ") + term
    return out


def _scalar_text(c: Fraction, latex: bool) -> str:
    if c.denominator == 1:
        return format_scalar(c)
    if latex:
        return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"
    return f"({format_scalar(c)})"


def _operator_items(p: UniPoly, latex: bool):
    items = []
    for k in range(p.degree, -1, -1):
        if p[k] != 0:
            items.append((p[k], _power("A", k, latex)))
    return items


def _operator_text(p: UniPoly) -> str:
    if p.degree == 1 and p[0] == 0:
        return "A"
    return "(" + _signed_join(_operator_items(p, False), False) + ")"


def _operator_latex(p: UniPoly) -> str:
    if p.degree == 1 and p[0] == 0:
        return "A"
    return "\\left(" + _signed_join(_operator_items(p, True), True) + "\\right)"


def _rhs_items(terms, latex: bool):
    items = []
    for pw, j, c in terms:
        psi = f"\\psi_{{{j}}}" if latex else f"ψ{j}"
        if pw == 0:
            body = psi
        elif latex:
            body = f"{_power('A', pw, True)}({psi})"
        else:
            body = f"{_power('A', pw, False)}({psi})"
        items.append((c, body))
    return items


def _rhs_text(terms) -> str:
    return _signed_join(_rhs_items(terms, False), False)


def _rhs_latex(terms) -> str:
    return _signed_join(_rhs_items(terms, True), True)
