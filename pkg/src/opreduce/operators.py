"""Concrete operator backends and end-to-end checks of the reduction.

Two backends realize the abstract operator A on finite data:

* ``shift``   - a sequence window x_0..x_N, A(x)_t = x_{t+1};
* ``dseries`` - a truncated power series x_0 + x_1 t + ... + x_D t^D,
  A(x)_j = (j+1) x_{j+1} (formal derivative).

Both satisfy A^m(x)_j = w(j, m) · x_{j+m} for a backend weight w, which
lets the initial-value solvers below be shared.  Every application of A
lowers the usable range (values - 1) by one; asking for more raises
:class:`RangeError` instead of returning truncated data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from .errors import InputError, InternalConsistencyError, RangeError
from .exactmath import UniPoly, format_scalar, parse_scalar
from .matrixcore import DenseMatrix
from .reduction import ReducedSystem, RhsTable, partially_reduce


class OperatorElement:
    """Finite window of exact values on which A acts."""

    backend = ""

    __slots__ = ("values",)

    def __init__(self, values: Sequence):
        vals = tuple(Fraction(v) for v in values)
        if not vals:
            raise InputError(f"{self.backend} element needs at least one value")
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @staticmethod
    def weight(j: int, m: int) -> Fraction:
        raise NotImplementedError

    @property
    def range(self) -> int:
        return len(self.values) - 1

    def A(self, times: int = 1):
        if times > self.range:
            raise RangeError(times, self.range, f"{self.backend} element")
        v = self.values
        return type(self)(self.weight(j, times) * v[j + times] for j in range(len(v) - times))

    def truncate(self, rng: int):
        if rng > self.range:
            raise RangeError(rng, self.range, f"{self.backend} element")
        return type(self)(self.values[: rng + 1])

    def _coerce(self, other):
        if type(other) is not type(self):
            raise InputError(f"cannot combine {self.backend} with {getattr(other, 'backend', other)!r}")
        return min(len(self.values), len(other.values))

    def __add__(self, other):
        m = self._coerce(other)
        return type(self)(a + b for a, b in zip(self.values[:m], other.values[:m]))

    def __sub__(self, other):
        m = self._coerce(other)
        return type(self)(a - b for a, b in zip(self.values[:m], other.values[:m]))

    def __neg__(self):
        return type(self)(-a for a in self.values)

    def __rmul__(self, c):
        c = Fraction(c)
        return type(self)(c * a for a in self.values)

    __mul__ = __rmul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash((self.backend, self.values))

    def __repr__(self):
        return f"{type(self).__name__}([{', '.join(format_scalar(v) for v in self.values)}])"

    @classmethod
    def zeros(cls, rng: int):
        return cls([0] * (rng + 1))

    def to_json(self) -> dict:
        return {
            "backend": self.backend,
            "window": self.range,
            "values": [format_scalar(v) for v in self.values],
        }


class SequenceElement(OperatorElement):
    backend = "shift"
    __slots__ = ()

    @staticmethod
    def weight(j, m):
        return Fraction(1)


class SeriesElement(OperatorElement):
    backend = "dseries"
    __slots__ = ()

    @staticmethod
    def weight(j, m):
        # d^m/dt^m of t^(j+m) at coefficient j
        return Fraction(prod(range(j + 1, j + m + 1)))


BACKENDS: dict[str, type[OperatorElement]] = {
    "shift": SequenceElement,
    "dseries": SeriesElement,
}


def backend_class(name: str) -> type[OperatorElement]:
    try:
        return BACKENDS[name]
    except KeyError:
        raise InputError(f"unknown backend {name!r}; expected one of {sorted(BACKENDS)}") from None


def element_from_json(data) -> OperatorElement:
    if not isinstance(data, dict) or "backend" not in data or "values" not in data:
        raise InputError("element must be an object with 'backend' and 'values'")
    cls = backend_class(data["backend"])
    el = cls(parse_scalar(v) for v in data["values"])
    if "window" in data and int(data["window"]) != el.range:
        raise InputError(f"element window {data['window']} disagrees with {len(el.values)} values")
    return el


def _common_range(elements: Sequence[OperatorElement]) -> int:
    return min(e.range for e in elements)


def combine(coeffs: Sequence, elements: Sequence[OperatorElement]) -> OperatorElement:
    """Σ c_i e_i on the common usable range."""
    if not elements:
        raise InputError("empty linear combination")
    cls = type(elements[0])
    m = _common_range(elements) + 1
    out = [Fraction(0)] * m
    for c, e in zip(coeffs, elements):
        if type(e) is not cls:
            raise InputError("mixed backends in one combination")
        if c == 0:
            continue
        for t in range(m):
            out[t] += c * e.values[t]
    return cls(out)


def transform(M: DenseMatrix, elements: Sequence[OperatorElement]) -> list[OperatorElement]:
    """Componentwise M · (e_1, ..., e_n)ᵀ."""
    if len(elements) != M.n:
        raise InputError(f"{len(elements)} components for a {M.n}×{M.n} matrix")
    return [combine(row, elements) for row in M.rows]


def apply_operator_poly(p: UniPoly, x: OperatorElement) -> OperatorElement:
    """Σ_j p_j A^j(x); the usable range drops by deg p."""
    if p.is_zero():
        return type(x).zeros(x.range)
    d = p.degree
    if x.range < d:
        raise RangeError(d, x.range, f"{x.backend} element for operator of degree {d}")
    return combine([p[j] for j in range(d + 1)], [x.A(j) if j else x for j in range(d + 1)])


def evaluate_rhs(rhs: RhsTable, psi: Sequence[OperatorElement]) -> OperatorElement:
    """Σ coeff[(m, j)] · A^m(ψ_j) over one block's local ψ's."""
    size = rhs.block_size
    if len(psi) != size:
        raise InputError(f"block of size {size} received {len(psi)} ψ components")
    need = size - 1
    have = _common_range(psi)
    if have < need:
        raise RangeError(need, have, "ψ block")
    coeffs, elements = [], []
    for power, j, c in rhs.terms():
        coeffs.append(c)
        elements.append(psi[j - 1].A(power) if power else psi[j - 1])
    if not elements:
        return type(psi[0]).zeros(have - need)
    # terms with lower powers carry more data; cut to the range of A^(size-1)
    return combine(coeffs, elements).truncate(have - need)


# initial-value solvers


def solve_initial_value(
    B: DenseMatrix, phi: Sequence[OperatorElement], x0: Sequence, steps: int, backend: str
) -> list[OperatorElement]:
    """x with x(0) = x0 and A(x) = Bx + φ, carried to usable range ``steps``."""
    cls = backend_class(backend)
    n = B.n
    if len(phi) != n or len(x0) != n:
        raise InputError(f"expected {n} free-column components and {n} initial values")
    if not isinstance(steps, int) or steps < 1:
        raise InputError(f"steps must be a positive integer, got {steps!r}")
    for e in phi:
        if type(e) is not cls:
            raise InputError(f"free column must use the {backend} backend")
        if e.range < steps - 1:
            raise RangeError(steps - 1, e.range, "free column (needs values for 0..steps-1)")
    cols = [[Fraction(v) for v in x0]]
    for t in range(steps):
        nxt = B @ cols[-1]
        wgt = cls.weight(t, 1)
        cols.append([(nxt[i] + phi[i].values[t]) / wgt for i in range(n)])
    return [cls(c[i] for c in cols) for i in range(n)]


def iterate_system(B, phi, x0, N: int) -> list[SequenceElement]:
    """Shift backend: x_{t+1} = B x_t + φ_t for 0 ≤ t < N."""
    return solve_initial_value(B, phi, x0, N, "shift")


def taylor_system(B, phi, x0, D: int) -> list[SeriesElement]:
    """Derivative backend: Taylor coefficients of x' = Bx + φ up to degree D."""
    return solve_initial_value(B, phi, x0, D, "dseries")


def solve_block_equation(
    p: UniPoly, rhs: OperatorElement, initials: Sequence
) -> OperatorElement:
    """y with y_0..y_{d-1} = initials and p(A)(y) = rhs on rhs's range."""
    d = p.degree
    if len(initials) != d:
        raise InputError(f"order-{d} equation needs {d} initial values, got {len(initials)}")
    cls = type(rhs)
    y = [Fraction(v) for v in initials]
    for j in range(len(rhs.values)):
        acc = rhs.values[j] - sum(
            (p[m] * cls.weight(j, m) * y[j + m] for m in range(d)), Fraction(0)
        )
        y.append(acc / cls.weight(j, d))
    return cls(y)


def solve_reduced(
    reduced: ReducedSystem, psi: Sequence[OperatorElement], initials: Sequence[Sequence]
) -> list[OperatorElement]:
    """Solve each block's higher-order equation forward, then its chain.

    ``initials[i]`` are the first n_i values of block i's leading unknown.
    All returned components are cut to a common usable range.
    """
    if len(initials) != len(reduced.subsystems):
        raise InputError(
            f"need initial values for {len(reduced.subsystems)} blocks, got {len(initials)}"
        )
    y: list[OperatorElement] = [None] * reduced.n
    for s, init in zip(reduced.subsystems, initials):
        block_psi = list(psi[s.offset: s.offset + s.size])
        y[s.offset] = solve_block_equation(s.poly, evaluate_rhs(s.rhs, block_psi), init)
        for ce in s.chain:
            y[ce.lhs - 1] = y[ce.operand - 1].A() - psi[ce.psi - 1]
    rng = _common_range(y)
    if rng < 1:
        raise RangeError(1, rng, "reduced solution (free column too short)")
    return [e.truncate(rng) for e in y]


# verification


def _residual(e: OperatorElement) -> list[Fraction]:
    return list(e.values)


@dataclass
class BlockReport:
    block: int
    offset: int
    size: int
    usable_range: int
    higher_residual: list[Fraction]
    chain_residuals: list[list[Fraction]]
    closing_residual: list[Fraction]

    def ok(self) -> bool:
        return (
            not any(self.higher_residual)
            and not any(any(r) for r in self.chain_residuals)
            and not any(self.closing_residual)
        )

    def to_json(self) -> dict:
        return {
            "block": self.block,
            "offset": self.offset,
            "size": self.size,
            "usable_range": self.usable_range,
            "higher_residual": [format_scalar(v) for v in self.higher_residual],
            "chain_residuals": [[format_scalar(v) for v in r] for r in self.chain_residuals],
            "closing_residual": [format_scalar(v) for v in self.closing_residual],
            "ok": self.ok(),
        }


@dataclass
class VerificationReport:
    mode: str
    backend: str
    blocks: list[BlockReport] = field(default_factory=list)
    system_residuals: list[list[Fraction]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(b.ok() for b in self.blocks) and not any(
            any(r) for r in self.system_residuals
        )

    def failures(self) -> list[str]:
        """Human-readable location of every nonzero residual entry."""
        out = []
        for b in self.blocks:
            for t, v in enumerate(b.higher_residual):
                if v:
                    out.append(f"block {b.block} higher-order equation, index {t}: {format_scalar(v)}")
            for r, res in enumerate(b.chain_residuals, start=1):
                for t, v in enumerate(res):
                    if v:
                        out.append(
                            f"block {b.block} chain y{b.offset + r + 1}, index {t}: {format_scalar(v)}"
                        )
            for t, v in enumerate(b.closing_residual):
                if v:
                    out.append(f"block {b.block} closing row, index {t}: {format_scalar(v)}")
        for i, res in enumerate(self.system_residuals, start=1):
            for t, v in enumerate(res):
                if v:
                    out.append(f"system equation {i}, index {t}: {format_scalar(v)}")
        return out

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "backend": self.backend,
            "ok": self.ok,
            "blocks": [b.to_json() for b in self.blocks],
            "system_residuals": [[format_scalar(v) for v in r] for r in self.system_residuals],
            "failures": self.failures(),
        }


def system_residuals(
    B: DenseMatrix, phi: Sequence[OperatorElement], x: Sequence[OperatorElement]
) -> list[list[Fraction]]:
    """A(x_i) - (Bx)_i - φ_i on the common range."""
    Ax = [e.A() for e in x]
    Bx = transform(B, x)
    res = [a - b - f for a, b, f in zip(Ax, Bx, phi)]
    rng = _common_range(res)
    return [_residual(r.truncate(rng)) for r in res]


def _block_reports(reduced: ReducedSystem, psi, y) -> list[BlockReport]:
    reports = []
    for i, s in enumerate(reduced.subsystems, start=1):
        ys = y[s.offset: s.offset + s.size]
        ps = psi[s.offset: s.offset + s.size]
        lhs = apply_operator_poly(s.poly, ys[0])
        rhs = evaluate_rhs(s.rhs, ps)
        higher = lhs - rhs
        chains = [
            _residual(y[ce.lhs - 1] - (y[ce.operand - 1].A() - psi[ce.psi - 1]))
            for ce in s.chain
        ]
        # last row of the companion system: A(y_last) = -Σ p_r y_(r+1) + ψ_last
        closing = ys[-1].A() + combine([s.poly[r] for r in range(s.size)], ys) - ps[-1]
        reports.append(
            BlockReport(i, s.offset, s.size, higher.range, _residual(higher), chains, _residual(closing))
        )
    return reports


def _detect_backend(elements, backend):
    if backend is None:
        backend = elements[0].backend
    cls = backend_class(backend)
    for e in elements:
        if type(e) is not cls:
            raise InputError(f"element of backend {e.backend!r} where {backend!r} expected")
    return backend


def verify_forward(
    B: DenseMatrix,
    phi: Sequence[OperatorElement],
    x: Sequence[OperatorElement],
    backend: str | None = None,
    reduced: ReducedSystem | None = None,
) -> VerificationReport:
    """Transform a solution of A(x) = Bx + φ and check every reduced equation."""
    n = B.n
    if len(phi) != n or len(x) != n:
        raise InputError(f"expected {n} components for φ and x")
    backend = _detect_backend(list(phi) + list(x), backend)
    red = reduced if reduced is not None else partially_reduce(B)
    biggest = max(s.size for s in red.subsystems)
    xr, pr = _common_range(x), _common_range(phi)
    if xr < biggest:
        raise RangeError(biggest, xr, f"solution window (largest block has order {biggest})")
    if pr < biggest - 1:
        raise RangeError(biggest - 1, pr, "free-column window")
    psi = transform(red.P_inv, phi)
    y = transform(red.P_inv, x)
    report = VerificationReport("forward", backend, _block_reports(red, psi, y))
    report.system_residuals = system_residuals(B, phi, x)
    return report


def reconstruct_and_verify(
    reduced: ReducedSystem,
    y: Sequence[OperatorElement],
    phi: Sequence[OperatorElement],
    B: DenseMatrix,
    backend: str | None = None,
) -> tuple[list[OperatorElement], VerificationReport]:
    """Map y to x = P·y and check A(x) = Bx + φ (plus the reduced equations on y)."""
    n = B.n
    if len(phi) != n or len(y) != n:
        raise InputError(f"expected {n} components for φ and y")
    backend = _detect_backend(list(phi) + list(y), backend)
    biggest = max(s.size for s in reduced.subsystems)
    yr = _common_range(y)
    if yr < biggest:
        raise RangeError(biggest, yr, f"reduced solution window (largest block has order {biggest})")
    psi = transform(reduced.P_inv, phi)
    x = transform(reduced.P, y)
    report = VerificationReport("reverse", backend, _block_reports(reduced, psi, y))
    report.system_residuals = system_residuals(B, phi, x)
    return x, report


def solve_system(
    B: DenseMatrix,
    phi: Sequence[OperatorElement],
    initials: Sequence[Sequence],
    reduced: ReducedSystem | None = None,
) -> tuple[list[OperatorElement], list[OperatorElement], VerificationReport]:
    """Solve through the reduced system and refuse to return an unverified x."""
    red = reduced if reduced is not None else partially_reduce(B)
    psi = transform(red.P_inv, phi)
    y = solve_reduced(red, psi, initials)
    x, report = reconstruct_and_verify(red, y, phi, B)
    if not report.ok:
        raise InternalConsistencyError(
            "reconstructed solution fails A(x) = Bx + φ: " + "; ".join(report.failures()[:5])
        )
    return x, y, report
