"""End-to-end CLI behavior: problem files in, JSON documents out, exit codes
0 (done), 1 (bad input), 2 (numerical failure)."""

import json

import numpy as np
import pytest

import cartanspec.shell as shell
from cartanspec.numkit import NumericalFailure
from cartanspec.shell import (
    load_problem,
    main,
    parse_problem,
    problem_digest,
    problem_to_jsonable,
)


AFFINE_DOC = {
    "algebra": {"dim": 2, "brackets": [[1, 2, [0.0, 1.0]]]},
    "representation": {
        "space_dim": 2,
        "matrices": [
            [[1.0, 0.0], [0.0, 0.0]],
            [[0.0, 1.0], [0.0, 0.0]],
        ],
    },
    "subalgebras": [
        {"name": "E1", "columns": [[1.0, 0.0]]},
        {"name": "diag", "columns": [[1.0, 1.0]]},
    ],
}

SCALAR_DOC = {
    "algebra": {"dim": 1, "brackets": []},
    "representation": {"space_dim": 2, "matrices": [[[5.0, 0.0], [0.0, 7.0]]]},
}

JACOBI_BAD_DOC = {
    "algebra": {
        "dim": 3,
        "brackets": [[1, 2, [1.0, 0.0, 0.0]], [1, 3, [0.0, 1.0, 0.0]]],
    }
}


def write_problem(tmp_path, doc, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    out = json.loads(captured.out) if captured.out.strip() else None
    err = json.loads(captured.err) if captured.err.strip() else None
    return code, out, err


class TestValidate:
    def test_good_problem_passes(self, tmp_path, capsys):
        path = write_problem(tmp_path, AFFINE_DOC)
        code, out, err = run_cli(capsys, "validate", path)
        assert code == 0
        assert err is None
        assert out["command"] == "validate"
        assert out["result"]["passed"] is True
        assert out["result"]["algebra"]["solvable"] is True
        assert {s["name"]: s["closed"] for s in out["result"]["subalgebras"]} == {
            "E1": True,
            "diag": True,
        }

    def test_jacobi_violation_exits_1_with_diagnostics(self, tmp_path, capsys):
        path = write_problem(tmp_path, JACOBI_BAD_DOC)
        code, out, err = run_cli(capsys, "validate", path)
        assert code == 1
        assert out["result"]["algebra"]["jacobi_ok"] is False
        assert err["error"]["code"] == 1
        assert err["error"]["type"] == "invalid_input"
        assert err["error"]["diagnostics"]["algebra"]["jacobi_residual"] > 0.1

    def test_open_subalgebra_fails_validation(self, tmp_path, capsys):
        doc = {
            "algebra": {"dim": 3, "brackets": [[1, 2, [0.0, 0.0, 1.0]]]},
            "subalgebras": [
                {"name": "plane", "columns": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]}
            ],
        }
        path = write_problem(tmp_path, doc)
        code, out, err = run_cli(capsys, "validate", path)
        assert code == 1
        entry = out["result"]["subalgebras"][0]
        assert entry["closed"] is False
        assert "closed" in entry["reason"]


class TestSpectrum:
    def test_taylor_output_is_frozen(self, tmp_path, capsys):
        path = write_problem(tmp_path, AFFINE_DOC)
        code, out, err = run_cli(capsys, "spectrum", path)
        assert code == 0
        result = out["result"]
        assert result["kind"] == "taylor"
        assert result["reason"] is None
        assert result["points"] == [
            {"coords": [[0.0, 0.0], [0.0, 0.0]], "multiplicity": 1},
            {"coords": [[1.0, 0.0], [0.0, 0.0]], "multiplicity": 1},
        ]

    def test_all_kinds_agree_on_the_affine_module(self, tmp_path, capsys):
        path = write_problem(tmp_path, AFFINE_DOC)

        def points(*argv):
            code, out, _ = run_cli(capsys, "spectrum", path, *argv)
            assert code == 0
            return [p["coords"] for p in out["result"]["points"]]

        expected = points()
        assert points("--kind", "slodkowski", "--side", "delta", "--k", "0") == expected
        assert points("--kind", "slodkowski", "--side", "pi", "--k", "1") == expected
        assert points("--kind", "split") == expected
        assert points("--kind", "split", "--side", "delta", "--k", "0") == expected
        assert points("--kind", "split", "--side", "pi", "--k", "0") == expected

    def test_essential_kind_is_empty_with_reason(self, tmp_path, capsys):
        path = write_problem(tmp_path, AFFINE_DOC)
        code, out, _ = run_cli(capsys, "spectrum", path, "--kind", "essential_taylor")
        assert code == 0
        assert out["result"]["points"] == []
        assert out["result"]["reason"] == "finite_dimensional_fredholm_trivial"

    def test_unknown_kind_exits_1(self, tmp_path, capsys):
        path = write_problem(tmp_path, AFFINE_DOC)
        code, out, err = run_cli(capsys, "spectrum", path, "--kind", "bogus")
        assert code == 1
        assert out is None
        assert "unknown spectrum kind" in err["error"]["message"]

    def test_taylor_takes_no_level(self, tmp_path, capsys):
        path = write_problem(tmp_path, AFFINE_DOC)
        code, _, err = run_cli(capsys, "spectrum", path, "--k", "1")
        assert code == 1
        assert err["error"]["type"] == "invalid_input"

    def test_missing_representation_block(self, tmp_path, capsys):
        path = write_problem(tmp_path, {"algebra": {"dim": 2, "brackets": []}})
        code, _, err = run_cli(capsys, "spectrum", path)
        assert code == 1
        assert "representation" in err["error"]["message"]


class TestCartanCommand:
    def test_decomposition_shape(self, tmp_path, capsys):
        path = write_problem(tmp_path, AFFINE_DOC)
        code, out, _ = run_cli(capsys, "cartan", path)
        assert code == 0
        result = out["result"]
        assert result["h_dim"] == 1
        assert result["h_star_dim"] == 1
        assert len(result["roots"]) == 2
        assert sorted(r["space_dim"] for r in result["roots"]) == [1, 1]


class TestVerifyCommand:
    def test_all_checkers_pass(self, tmp_path, capsys):
        path = write_problem(tmp_path, AFFINE_DOC)
        code, out, _ = run_cli(capsys, "verify", path)
        assert code == 0
        result = out["result"]
        assert result["all_passed"] is True
        ids = [r["theorem_id"] for r in result["reports"]]
        assert ids.count("projection") == 2
        for expected in (
            "duality",
            "split_identity",
            "cartan_independence",
            "essential_trivial",
        ):
            assert expected in ids

    def test_failed_verdict_is_still_exit_0(self, tmp_path, capsys, monkeypatch):
        # a wrong verdict is a completed computation, not a tool error
        path = write_problem(tmp_path, AFFINE_DOC)
        import cartanspec.verify as verify_mod

        real = verify_mod.hausdorff_distance
        monkeypatch.setattr(shell, "check_duality", lambda *a, **k: _failing_report())
        code, out, _ = run_cli(capsys, "verify", path, "--theorem", "duality")
        assert code == 0
        assert out["result"]["all_passed"] is False
        assert real is verify_mod.hausdorff_distance

    def test_product_formulas_with_second_problem(self, tmp_path, capsys):
        path = write_problem(tmp_path, AFFINE_DOC)
        other = write_problem(tmp_path, SCALAR_DOC, name="second.json")
        for theorem in ("tensor_product_formula", "multiplication_formula"):
            code, out, _ = run_cli(
                capsys, "verify", path, "--theorem", theorem, "--with", other
            )
            assert code == 0
            assert out["result"]["all_passed"] is True

    def test_product_formula_without_second_problem(self, tmp_path, capsys):
        path = write_problem(tmp_path, AFFINE_DOC)
        code, _, err = run_cli(capsys, "verify", path, "--theorem", "tensor_product_formula")
        assert code == 1
        assert "--with" in err["error"]["message"]

    def test_bad_seeds_string(self, tmp_path, capsys):
        path = write_problem(tmp_path, AFFINE_DOC)
        code, _, err = run_cli(capsys, "verify", path, "--seeds", "1,x")
        assert code == 1
        assert "comma-separated" in err["error"]["message"]


class TestFuzzCommand:
    def test_small_sweep(self, capsys):
        code, out, _ = run_cli(capsys, "fuzz", "--seed", "5", "--count", "2")
        assert code == 0
        counts = out["result"]["counts"]
        assert counts["checked"] > 0
        assert counts["error"] == 0
        assert out["result"]["all_passed"] is True


class TestErrorPaths:
    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "validate", "/nonexistent/problem.json")
        assert code == 1
        assert "cannot read" in err["error"]["message"]

    def test_invalid_json(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, _, err = run_cli(capsys, "validate", str(path))
        assert code == 1
        assert "not valid JSON" in err["error"]["message"]

    def test_bad_bracket_indices(self, tmp_path, capsys):
        doc = {"algebra": {"dim": 2, "brackets": [[2, 1, [0.0, 1.0]]]}}
        path = write_problem(tmp_path, doc)
        code, _, err = run_cli(capsys, "validate", path)
        assert code == 1
        assert "bracket indices" in err["error"]["message"]

    def test_numerical_failure_exits_2(self, tmp_path, capsys, monkeypatch):
        path = write_problem(tmp_path, AFFINE_DOC)

        def explode(*args, **kwargs):
            raise NumericalFailure("synthetic breakdown")

        monkeypatch.setattr(shell, "cartan_decomposition", explode)
        code, _, err = run_cli(capsys, "cartan", path)
        assert code == 2
        assert err["error"]["code"] == 2
        assert err["error"]["type"] == "numerical_failure"
        assert "synthetic breakdown" in err["error"]["message"]


class TestProblemRoundtrip:
    def test_roundtrip_preserves_digest(self, tmp_path):
        path = write_problem(tmp_path, AFFINE_DOC)
        problem = load_problem(path)
        reparsed = parse_problem(problem_to_jsonable(problem))
        assert problem_digest(problem) == problem_digest(reparsed)
        assert np.array_equal(reparsed.algebra.structure, problem.algebra.structure)
        assert np.array_equal(reparsed.rep.mats, problem.rep.mats)

    def test_tolerance_override_lands_in_the_output(self, tmp_path, capsys):
        path = write_problem(tmp_path, AFFINE_DOC)
        code, out, _ = run_cli(capsys, "validate", path, "--match-eps", "0.5")
        assert code == 0
        assert out["tolerance"]["match_eps"] == 0.5

    def test_complex_entries_roundtrip(self, tmp_path):
        doc = {
            "algebra": {"dim": 2, "brackets": [[1, 2, [[0.0, 0.0], [0.0, 1.0]]]]},
        }
        path = write_problem(tmp_path, doc)
        problem = load_problem(path)
        assert problem.algebra.structure[0, 1, 1] == 1j


def _failing_report():
    from cartanspec.verify import CheckReport

    return CheckReport(
        theorem_id="duality",
        inputs_digest="x" * 8,
        lhs=(),
        rhs=(),
        distance=1.0,
        passed=False,
        seed=0,
    )
