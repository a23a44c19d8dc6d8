from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from opreduce.exactmath import UniPoly
from opreduce.matrixcore import DenseMatrix

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

small_ints = st.integers(min_value=-5, max_value=5)
fractions = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def polys(draw, max_degree=8, elements=small_ints):
    coeffs = draw(st.lists(elements, max_size=max_degree + 1))
    return UniPoly(coeffs)


@st.composite
def monic_polys(draw, min_degree=1, max_degree=8, elements=small_ints):
    d = draw(st.integers(min_degree, max_degree))
    coeffs = draw(st.lists(elements, min_size=d, max_size=d))
    return UniPoly(coeffs + [1])


@st.composite
def int_matrices(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n))
    return DenseMatrix(rows)


def F(*xs):
    return [Fraction(x) for x in xs]


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
