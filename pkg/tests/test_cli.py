import json

import pytest

from opreduce.cli import main
from opreduce.operators import SequenceElement, element_from_json, system_residuals
from opreduce.problem import load_problem, parse_problem
from opreduce.errors import InputError
from opreduce.reduction import ReducedSystem


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, data, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


class TestCharpoly:
    def test_identity(self, capsys, tmp_path):
        code, out, _ = run(capsys, "charpoly", write(tmp_path, {"matrix": [["1", "0"], ["0", "1"]]}))
        data = json.loads(out)
        assert code == 0
        assert data["delta"] == ["2", "1"]
        assert data["coefficients"] == ["1", "-2", "1"]

    def test_upper_triangular(self, capsys, tmp_path):
        code, out, _ = run(capsys, "charpoly", write(tmp_path, {"matrix": [[2, 1], [0, 3]]}))
        assert json.loads(out)["coefficients"] == ["6", "-5", "1"]
        assert json.loads(out)["d"] == ["-5", "6"]

    def test_bad_scalar(self, capsys, tmp_path):
        code, _, err = run(capsys, "charpoly", write(tmp_path, {"matrix": [["1/0"]]}))
        assert code == 2
        assert "matrix[0][0]" in err

    def test_bad_json_reports_line(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n  "matrix": [["1"]\n')
        code, _, err = run(capsys, "charpoly", path)
        assert code == 2 and "line" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "charpoly", tmp_path / "nope.json")
        assert code == 2

    @pytest.mark.parametrize(
        "data, field",
        [
            ({"matrix": [["1", "2"]]}, "matrix[0]"),
            ({}, "matrix"),
            ({"matrix": [["1"]], "x0": ["1", "2"]}, "x0"),
            ({"matrix": [["1"]], "free_column": {"backend": "warp", "elements": [["1"]]}}, "free_column.backend"),
            ({"matrix": [["1"]], "free_column": {"backend": "shift", "window": 3, "elements": [["1"]]}}, "free_column.window"),
        ],
    )
    def test_field_diagnostics(self, capsys, tmp_path, data, field):
        code, _, err = run(capsys, "charpoly", write(tmp_path, data))
        assert code == 2 and field in err


class TestRcfAndReduce:
    def test_rcf(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "rcf", fixtures_dir / "reduce_3x3_two_blocks.json")
        data = json.loads(out)
        assert code == 0 and data["blocks"] == [["-2", "1"], ["6", "-5", "1"]]

    def test_reduce_json_round_trip(self, capsys, fixtures_dir, tmp_path):
        for name in ["reduce_2x2_one_block.json", "reduce_3x3_one_block.json", "reduce_3x3_two_blocks.json"]:
            code, out, _ = run(capsys, "reduce", fixtures_dir / name)
            assert code == 0
            red = ReducedSystem.from_json(json.loads(out))
            assert json.loads(json.dumps(red.to_json())) == json.loads(out)

    def test_reduce_latex(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "reduce", fixtures_dir / "reduce_3x3_one_block.json", "--emit", "latex")
        assert code == 0
        assert out.count("= A(y_") == 2
        assert "\\left(A^{3}" in out

    def test_one_by_one(self, capsys, tmp_path):
        code, out, _ = run(capsys, "reduce", write(tmp_path, {"matrix": [["7"]]}))
        data = json.loads(out)
        assert data["equations"] == ["(A - 7I)(y1) = ψ1"]
        assert data["subsystems"][0]["chain"] == []

    def test_output_flag(self, capsys, fixtures_dir, tmp_path):
        dest = tmp_path / "out.tex"
        code, out, _ = run(capsys, "reduce", fixtures_dir / "reduce_2x2_scalar.json", "--emit", "latex", "--output", dest)
        assert code == 0 and out == ""
        assert dest.read_text().count("\\wedge") == 1


class TestVerify:
    def test_fixture_passes(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "verify", fixtures_dir / "fixture_2x2.json")
        data = json.loads(out)
        assert code == 0 and data["ok"]
        assert all(v == "0" for v in data["forward"]["blocks"][0]["higher_residual"])

    def test_dseries_fixture_passes(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "verify", fixtures_dir / "fixture_dseries_3x3.json")
        assert code == 0 and json.loads(out)["forward"]["backend"] == "dseries"

    def test_fixture_is_a_solution(self, fixtures_dir):
        prob = load_problem(fixtures_dir / "fixture_2x2.json")
        assert not any(any(r) for r in system_residuals(prob.matrix, prob.free_column, prob.solution))

    def test_perturbed_fails_and_locates(self, capsys, fixtures_dir):
        code, out, err = run(capsys, "verify", fixtures_dir / "fixture_2x2_perturbed.json")
        assert code == 1
        assert not json.loads(out)["ok"]
        assert "index 7" in err

    def test_short_window(self, capsys, fixtures_dir):
        code, _, err = run(capsys, "verify", fixtures_dir / "fixture_2x2.json", "--steps", "1")
        assert code == 2 and "needs usable range 2" in err

    def test_seeded_random_data(self, capsys, tmp_path):
        path = write(tmp_path, {"matrix": [["1", "2", "0"], ["0", "1", "1"], ["3", "0", "2"]]})
        code, out, _ = run(capsys, "verify", path, "--backend", "dseries", "--seed", "3", "--steps", "10")
        assert code == 0

    def test_needs_x0_or_seed(self, capsys, tmp_path):
        code, _, err = run(capsys, "verify", write(tmp_path, {"matrix": [["1"]]}), "--backend", "shift")
        assert code == 2 and "x0" in err


class TestSolve:
    def test_homogeneous_single_block(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "solve", fixtures_dir / "solve_2x2.json")
        data = json.loads(out)
        assert code == 0 and data["report"]["ok"]
        x = [element_from_json(e) for e in data["x"]]
        prob = load_problem(fixtures_dir / "solve_2x2.json")
        phi = [SequenceElement.zeros(x[0].range)] * 2
        assert not any(any(r) for r in system_residuals(prob.matrix, phi, x))
        assert x[0].range == 20

    def test_zero(self, capsys, tmp_path):
        path = write(tmp_path, {"matrix": [["1", "1"], ["0", "2"]], "initials": [["0", "0"]]})
        code, out, _ = run(capsys, "solve", path)
        data = json.loads(out)
        assert code == 0
        assert all(v == "0" for e in data["x"] for v in e["values"])

    def test_diagonal_blocks(self, capsys, fixtures_dir, tmp_path):
        path = write(tmp_path, {"matrix": [["3", "0"], ["0", "3"]], "initials": [["1"], ["2"]], "steps": 5})
        code, out, _ = run(capsys, "solve", path)
        data = json.loads(out)
        assert code == 0 and data["blocks"] == [["-3", "1"], ["-3", "1"]]
        assert data["x"][0]["values"] == ["1", "3", "9", "27", "81", "243"]

    def test_wrong_initials(self, capsys, tmp_path):
        path = write(tmp_path, {"matrix": [["1", "1"], ["0", "2"]], "initials": [["0"]]})
        code, _, err = run(capsys, "solve", path)
        assert code == 2 and "initials[0]" in err

    def test_internal_error_exit_code(self, capsys, fixtures_dir, monkeypatch):
        import opreduce.operators as ops

        monkeypatch.setattr(ops, "solve_reduced", lambda red, psi, ini: [SequenceElement([1, 5, 2]), SequenceElement([0, 1, 0])])
        code, out, err = run(capsys, "solve", fixtures_dir / "solve_2x2.json")
        assert code == 3 and out == ""


def test_problem_round_trip(fixtures_dir):
    for path in sorted(fixtures_dir.glob("*.json")):
        prob = load_problem(path)
        assert parse_problem(prob.to_json()) == prob


def test_solution_requires_backend():
    with pytest.raises(InputError):
        parse_problem({"matrix": [["1"]], "solution": [["1", "2"]]})
