"""Command-line behavior: outputs, determinism, exit codes."""

import json

import pytest

from sl2betti.cli import run
from conftest import J_TEXT


@pytest.fixture()
def j_file(tmp_path):
    path = tmp_path / "J.txt"
    head = (
        "ring x1 x2 x3 x4 x5 x6 x7 x8 x9 x10 ; "
        "weights 3 3 2 3 2 3 3 2 2 3 ; order weighted ;\n"
    )
    path.write_text(head + "\n".join(J_TEXT) + "\n")
    return str(path)


@pytest.fixture()
def gens_file(tmp_path):
    # invariants of two linear forms plus a quadratic: five generators
    path = tmp_path / "gens.txt"
    out = run(["invariants", "1,1,2"])
    assert out == 0
    # regenerate through the library to avoid capturing stdout plumbing here
    from sl2betti.invariants import ProblemSpec, minimal_invariant_generators
    from sl2betti.poly import WEIGHTED, format_session

    gs = minimal_invariant_generators(ProblemSpec((1, 1, 2), 3))
    path.write_text(format_session(gs.cring.ring, WEIGHTED, gs.generators))
    return str(path)


class TestBettiCommand:
    def test_published_diagram(self, j_file, capsys):
        code = run(["betti", "--gens", j_file, "--weights", "3,3,2,3,2,3,3,2,2,3"])
        out = capsys.readouterr().out
        assert code == 0
        assert "palindromic: true" in out
        assert "0 -> R(-17) -> R(-11)^6 (+) R(-12)^3" in out
        assert "1 - 3*z^5 - 6*z^6 + 8*z^8 + 8*z^9 - 6*z^11 - 3*z^12 + z^17" in out

    def test_json_format(self, j_file, capsys):
        code = run(["betti", "--gens", j_file, "--format", "json"])
        out = capsys.readouterr().out
        assert code == 0
        doc = json.loads(out)
        assert doc["length"] == 4 and doc["j_star"] == 17
        assert doc["palindromic"] is True
        assert [2, 8, 8] in doc["betti"]

    def test_deterministic_output(self, j_file, capsys):
        run(["betti", "--gens", j_file])
        first = capsys.readouterr().out
        run(["betti", "--gens", j_file])
        second = capsys.readouterr().out
        assert first == second

    def test_weights_mismatch_is_usage_error(self, j_file, capsys):
        code = run(["betti", "--gens", j_file, "--weights", "1,1"])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_inhomogeneous_rejected(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("ring x y ; weights 1 1 ; order weighted ;\nx + x*y\n")
        code = run(["betti", "--gens", str(path)])
        assert code == 2

    def test_malformed_file(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("ring x ; weights 1 ; order weighted ;\nx + q*z\n")
        assert run(["betti", "--gens", str(path)]) == 2


class TestResolveCommand:
    def test_two_cubics(self, capsys):
        code = run(["resolve", "3,3"])
        out = capsys.readouterr().out
        assert code == 0
        assert "0 -> R(-20) -> R(-8) (+) R(-12) -> R" in out
        assert "palindromic: true" in out

    def test_json(self, capsys):
        code = run(["resolve", "3,3", "--format", "json"])
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["degrees"] == [3, 3]
        assert doc["length"] == 2 and doc["j_star"] == 20

    def test_gens_file_route(self, gens_file, capsys):
        code = run(["resolve", "--gens", gens_file])
        out = capsys.readouterr().out
        assert code == 0
        assert "0 -> R(-6) -> R" in out

    def test_unknown_degrees_need_bound(self, capsys):
        code = run(["resolve", "9,9"])
        assert code == 2
        assert "--bound" in capsys.readouterr().err


class TestKernelCommand:
    def test_pipeline_route(self, capsys):
        code = run(["kernel", "1,1,2"])
        out = capsys.readouterr().out
        assert code == 0
        assert "degrees: 6" in out
        assert "certified" in out

    def test_gens_file_route(self, gens_file, capsys):
        code = run(["kernel", "--gens", gens_file])
        out = capsys.readouterr().out
        assert code == 0
        assert "minimal kernel generators: 1" in out

    def test_elimination_method(self, capsys):
        code = run(["kernel", "1,1,2", "--method", "elimination"])
        out = capsys.readouterr().out
        assert code == 0
        assert "degrees: 6" in out

    def test_missing_args(self, capsys):
        assert run(["kernel"]) == 2


class TestInvariantsCommand:
    def test_bracket(self, capsys):
        code = run(["invariants", "1,1"])
        out = capsys.readouterr().out
        assert code == 0
        assert "x1*y0 - x0*y1" in out
        assert "form 1 (degree 1): x0 x1" in out

    def test_bad_degree_list(self, capsys):
        assert run(["invariants", "1,0,2"]) == 2


class TestVerifyCommand:
    def test_small_case_passes(self, capsys):
        code = run(["verify", "4V1"])
        out = capsys.readouterr().out
        assert code == 0
        assert "[PASS] 4V1" in out
        assert "all checks passed" in out

    def test_label_normalization(self, capsys):
        code = run(["verify", "v1+v1+v2"])
        out = capsys.readouterr().out
        assert code == 0
        assert "[PASS] 2V1+V2" in out

    def test_unknown_label(self, capsys):
        assert run(["verify", "V99"]) == 2

    def test_stretch_excluded_by_default(self, capsys):
        # 'all' must not contain the stretch labels unless asked
        from sl2betti.cases import CASES

        non_stretch = [c.label for c in CASES if not c.stretch]
        assert "V8" not in non_stretch
        assert "2V1+V3" not in non_stretch

    def test_skip_stretch_flag_accepted(self, capsys):
        # compatibility spelling: stretch cases are already skipped by default
        code = run(["verify", "4V1", "--skip-stretch"])
        assert code == 0


class TestEnvironment:
    def test_threads_env_validation(self, monkeypatch, capsys):
        monkeypatch.setenv("SL2BETTI_THREADS", "zero")
        assert run(["invariants", "1,1"]) == 2
        monkeypatch.setenv("SL2BETTI_THREADS", "2")
        assert run(["invariants", "1,1"]) == 0


class TestDeterminism:
    def test_byte_identical_across_processes(self, j_file):
        import subprocess
        import sys

        outs = []
        for seed in ("0", "1234"):
            proc = subprocess.run(
                [sys.executable, "-m", "sl2betti.cli", "betti", "--gens", j_file],
                capture_output=True,
                text=True,
                env={**__import__("os").environ, "PYTHONHASHSEED": seed},
            )
            assert proc.returncode == 0
            outs.append(proc.stdout)
        assert outs[0] == outs[1]


class TestVerifyFailurePath:
    def test_wrong_golden_data_fails(self, capsys):
        # verify must report FAIL and exit 1 when the table cannot match
        from dataclasses import replace
        from sl2betti.cases import BY_LABEL
        from sl2betti.cli import verify_case

        rec = BY_LABEL["4V1"]
        sabotaged = replace(rec, betti={(0, 0): 1, (1, 4): 2})
        result = verify_case(sabotaged)
        assert not result.ok
        assert any(c.name == "betti" and not c.ok for c in result.checks)
