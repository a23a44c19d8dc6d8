"""Regenerate the JSON problem files under fixtures/."""

import json
import random
from fractions import Fraction
from pathlib import Path

from opreduce.matrixcore import DenseMatrix
from opreduce.operators import SequenceElement, SeriesElement, iterate_system, taylor_system
from opreduce.problem import ProblemFile
from opreduce.randgen import random_int_vector

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def write(name, prob):
    (OUT / name).write_text(json.dumps(prob.to_json(), indent=2) + "\n", encoding="utf-8")


def main():
    OUT.mkdir(exist_ok=True)
    rng = random.Random(2026)

    B = DenseMatrix([[1, 1], [0, 2]])
    N = 25
    phi = [SequenceElement(random_int_vector(rng, N)) for _ in range(2)]
    x0 = random_int_vector(rng, 2)
    x = iterate_system(B, phi, x0, N)
    write("fixture_2x2.json", ProblemFile(B, "shift", phi, x0, x, steps=N))

    bad = list(x[1].values)
    bad[7] += 1
    write("fixture_2x2_perturbed.json",
          ProblemFile(B, "shift", phi, x0, [x[0], SequenceElement(bad)], steps=N))

    B3 = DenseMatrix([[2, 0, 0], [1, 2, 0], [0, 0, 3]])
    D = 25
    psi = [SeriesElement(random_int_vector(rng, D)) for _ in range(3)]
    x0 = random_int_vector(rng, 3)
    write("fixture_dseries_3x3.json",
          ProblemFile(B3, "dseries", psi, x0, taylor_system(B3, psi, x0, D), steps=D))

    write("solve_2x2.json", ProblemFile(B, initials=[[Fraction(0), Fraction(1)]], steps=20))

    examples = {
        "reduce_2x2_one_block.json": [[1, 1], [0, 2]],
        "reduce_2x2_scalar.json": [[3, 0], [0, 3]],
        "reduce_3x3_one_block.json": [[1, 2, 0], [0, 1, 1], [3, 0, 2]],
        "reduce_3x3_two_blocks.json": [[2, 0, 0], [0, 2, 0], [0, 0, 3]],
        "reduce_3x3_scalar.json": [[5, 0, 0], [0, 5, 0], [0, 0, 5]],
    }
    for name, rows in examples.items():
        write(name, ProblemFile(DenseMatrix(rows)))


if __name__ == "__main__":
    main()
