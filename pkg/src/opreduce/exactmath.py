"""Exact rationals and dense univariate polynomials over them.

Scalars are plain :class:`fractions.Fraction` values.  Polynomials are
immutable, stored as ascending coefficient tuples with no trailing zeros.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

from .errors import InputError

ExactScalar = Fraction

_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_scalar(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a Python int into a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise InputError(f"not a scalar: {value!r}")
    m = _SCALAR_RE.match(value)
    if m is None:
        raise InputError(f"malformed scalar {value!r}, expected 'p/q' or 'p'")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise InputError(f"malformed scalar {value!r}: zero denominator")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_scalar(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@total_ordering
class _MinusInfinity:
    """Degree of the zero polynomial; below every integer, absorbs addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("degree:-inf")

    def __lt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__


MINUS_INFINITY = _MinusInfinity()


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class UniPoly:
    """Dense polynomial in one variable; ``coeffs[i]`` multiplies ``λ**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def constant(cls, c) -> UniPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c=1) -> UniPoly:
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> UniPoly:
        p = cls.constant(1)
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INFINITY

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return UniPoly(c / lc for c in self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly([{', '.join(format_scalar(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("λ" if i == 1 else f"λ^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = format_scalar(abs(c)) + mono
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[i] - other[i] for i in range(n))

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        return poly_divmod(self, _as_poly(other))

    def __floordiv__(self, other):
        return poly_divmod(self, _as_poly(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, _as_poly(other))[1]

    def __call__(self, x):
        """Horner evaluation at a scalar."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divides(self, other: UniPoly) -> bool:
        return poly_divmod(other, self)[1].is_zero()


def _as_poly(x):
    if isinstance(x, UniPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return UniPoly.constant(x)
    return None


def poly_arith(p: UniPoly, q: UniPoly, kind: str) -> UniPoly:
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise InputError(f"unknown polynomial operation {kind!r}")


def poly_divmod(p: UniPoly, q: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Euclidean division: ``p == q*quot + rem`` with ``deg rem < deg q``."""
    if q is None or q.is_zero():
        raise InputError("polynomial division by zero")
    rem = list(p.coeffs)
    dq = len(q.coeffs) - 1
    lc = q.coeffs[-1]
    if len(rem) - 1 < dq:
        return UniPoly(), p
    quot = [Fraction(0)] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i] / lc
        if c == 0:
            continue
        quot[i - dq] = c
        for j, b in enumerate(q.coeffs):
            rem[i - dq + j] -= c * b
    return UniPoly(quot), UniPoly(rem[:dq])


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    if p.is_zero() and q.is_zero():
        raise InputError("gcd(0, 0) is undefined")
    a, b = p, q
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def poly_from_strings(items: Sequence) -> UniPoly:
    return UniPoly(parse_scalar(s) for s in items)


def poly_to_strings(p: UniPoly) -> list[str]:
    return [format_scalar(c) for c in p.coeffs]
