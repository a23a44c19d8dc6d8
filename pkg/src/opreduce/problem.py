"""Problem files: the JSON input read by every CLI command.

Layout::

    {
      "matrix": [["1", "1"], ["0", "2"]],
      "free_column": "symbolic"
                   | {"backend": "shift", "window": 24, "elements": [["0", ...], ...]},
      "x0": ["1", "0"],                     # optional
      "solution": [["1", ...], ...],        # optional, same backend as free_column
      "initials": [["0", "1"]],             # optional, one list per block (solve)
      "steps": 25,                          # optional
      "seed": 7                             # optional
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import InputError
from .exactmath import format_scalar, parse_scalar
from .matrixcore import DenseMatrix, matrix_to_strings
from .operators import OperatorElement, backend_class


@dataclass
class ProblemFile:
    matrix: DenseMatrix
    backend: str | None = None
    free_column: list[OperatorElement] | None = None
    x0: list[Fraction] | None = None
    solution: list[OperatorElement] | None = None
    initials: list[list[Fraction]] | None = None
    steps: int | None = None
    seed: int | None = None

    @property
    def n(self) -> int:
        return self.matrix.n

    def to_json(self) -> dict:
        out: dict = {"matrix": matrix_to_strings(self.matrix)}
        if self.free_column is None:
            out["free_column"] = "symbolic"
        else:
            out["free_column"] = {
                "backend": self.backend,
                "window": min(e.range for e in self.free_column),
                "elements": [[format_scalar(v) for v in e.values] for e in self.free_column],
            }
        if self.x0 is not None:
            out["x0"] = [format_scalar(v) for v in self.x0]
        if self.solution is not None:
            out["solution"] = [[format_scalar(v) for v in e.values] for e in self.solution]
        if self.initials is not None:
            out["initials"] = [[format_scalar(v) for v in row] for row in self.initials]
        if self.steps is not None:
            out["steps"] = self.steps
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _scalar(value, where: str) -> Fraction:
    try:
        return parse_scalar(value)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def _vector(value, where: str, length: int | None = None) -> list[Fraction]:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list of scalars")
    if length is not None and len(value) != length:
        raise InputError(f"{where}: expected {length} entries, got {len(value)}")
    return [_scalar(v, f"{where}[{i}]") for i, v in enumerate(value)]


def _elements(value, where: str, cls, n: int) -> list[OperatorElement]:
    if not isinstance(value, list) or len(value) != n:
        raise InputError(f"{where}: expected {n} component arrays")
    out = []
    for i, comp in enumerate(value):
        vals = _vector(comp, f"{where}[{i}]")
        if not vals:
            raise InputError(f"{where}[{i}]: empty component")
        out.append(cls(vals))
    return out


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer")
    return value


def parse_problem(data) -> ProblemFile:
    if not isinstance(data, dict):
        raise InputError("problem file must be a JSON object")
    if "matrix" not in data:
        raise InputError("matrix: required field missing")
    rows = data["matrix"]
    if not isinstance(rows, list) or not rows:
        raise InputError("matrix: expected a non-empty list of rows")
    n = len(rows)
    matrix = DenseMatrix([_vector(r, f"matrix[{i}]", n) for i, r in enumerate(rows)])

    prob = ProblemFile(matrix)
    fc = data.get("free_column", "symbolic")
    if fc != "symbolic":
        if not isinstance(fc, dict) or "backend" not in fc or "elements" not in fc:
            raise InputError("free_column: expected \"symbolic\" or {backend, elements}")
        try:
            cls = backend_class(fc["backend"])
        except InputError as exc:
            raise InputError(f"free_column.backend: {exc}") from None
        prob.backend = fc["backend"]
        prob.free_column = _elements(fc["elements"], "free_column.elements", cls, n)
        if "window" in fc:
            w = _int(fc["window"], "free_column.window")
            have = min(e.range for e in prob.free_column)
            if w != have:
                raise InputError(f"free_column.window: declared {w}, data covers {have}")
    if "x0" in data:
        prob.x0 = _vector(data["x0"], "x0", n)
    if "solution" in data:
        if prob.backend is None:
            raise InputError("solution: requires free_column backend data")
        prob.solution = _elements(data["solution"], "solution", backend_class(prob.backend), n)
    if "initials" in data:
        ini = data["initials"]
        if not isinstance(ini, list):
            raise InputError("initials: expected one list per block")
        prob.initials = [_vector(v, f"initials[{i}]") for i, v in enumerate(ini)]
    if "steps" in data:
        prob.steps = _int(data["steps"], "steps")
    if "seed" in data:
        prob.seed = _int(data["seed"], "seed")
    return prob


def load_problem(path) -> ProblemFile:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_problem(data)
