"""CLI frontend: parsing, exit codes, report formats, determinism."""

from __future__ import annotations

import json
import shutil
import subprocess
import sys

import numpy as np
import pytest

from locc_audit import REPORT_FIELDS
from locc_audit.cli import main

RT2 = 0.7071067811865476


def write_state(path, dims, amps):
    path.write_text(json.dumps({"dims": dims, "amps": amps}))
    return str(path)


def bell_file(tmp_path):
    return write_state(
        tmp_path / "bell.json", [2, 2], [[0, 0, RT2, 0.0], [1, 1, RT2, 0.0]]
    )


class TestAnalyze:
    def test_forward_only_inline(self, capsys):
        assert main(["analyze", "--schmidt-a", "0.5,0.5", "--schmidt-b", "1,0"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["verdict"] == "ForwardOnly"
        assert out["schmidt_a"] == [0.5, 0.5]
        assert out["schmidt_b"] == [1.0, 0.0]
        assert out["entropy_a"] == pytest.approx(1.0)
        assert out["entropy_b"] == 0.0

    def test_incomparable_inline(self, capsys):
        code = main(
            ["analyze", "--schmidt-a", "0.4,0.4,0.2", "--schmidt-b", "0.5,0.25,0.25"]
        )
        assert code == 0
        assert json.loads(capsys.readouterr().out)["verdict"] == "Incomparable"

    def test_inline_weights_are_sorted_on_ingestion(self, capsys):
        assert main(["analyze", "--schmidt-a", "0.2,0.8", "--schmidt-b", "1,0"]) == 0
        assert json.loads(capsys.readouterr().out)["schmidt_a"] == [0.8, 0.2]

    def test_bad_sum_exits_2(self, capsys):
        code = main(["analyze", "--schmidt-a", "0.7,0.4", "--schmidt-b", "1,0"])
        assert code == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_negative_weight_exits_2(self):
        assert main(["analyze", "--schmidt-a", "1.2,-0.2", "--schmidt-b", "1,0"]) == 2

    def test_unparseable_weight_exits_2(self):
        assert main(["analyze", "--schmidt-a", "0.5,oops", "--schmidt-b", "1,0"]) == 2

    def test_both_sources_for_one_side_rejected(self, tmp_path):
        bell = bell_file(tmp_path)
        with pytest.raises(SystemExit) as exc:
            main(["analyze", "--psi", bell, "--schmidt-a", "1,0", "--schmidt-b", "1,0"])
        assert exc.value.code == 2

    def test_missing_side_rejected(self):
        with pytest.raises(SystemExit) as exc:
            main(["analyze", "--schmidt-a", "0.5,0.5"])
        assert exc.value.code == 2

    def test_state_file_source(self, tmp_path, capsys):
        bell = bell_file(tmp_path)
        assert main(["analyze", "--psi", bell, "--schmidt-b", "1,0"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["verdict"] == "ForwardOnly"
        assert out["schmidt_a"] == pytest.approx([0.5, 0.5], abs=1e-12)

    def test_complex_amplitudes(self, tmp_path, capsys):
        path = write_state(
            tmp_path / "phase.json", [2, 2], [[0, 0, RT2, 0.0], [1, 1, 0.0, RT2]]
        )
        assert main(["analyze", "--psi", path, "--phi", path]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["verdict"] == "Equivalent"
        assert out["schmidt_a"] == pytest.approx([0.5, 0.5], abs=1e-12)

    def test_csv_format(self, capsys):
        assert main(
            [
                "analyze",
                "--schmidt-a",
                "0.5,0.5",
                "--schmidt-b",
                "1,0",
                "--format",
                "csv",
            ]
        ) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "verdict,schmidt_a,schmidt_b,entropy_a,entropy_b"
        cells = lines[1].split(",")
        assert cells[0] == "ForwardOnly"
        assert cells[1] == "0.5;0.5"

    def test_output_is_deterministic(self, capsys):
        argv = ["analyze", "--schmidt-a", "0.62,0.38", "--schmidt-b", "0.9,0.1"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        assert capsys.readouterr().out == first


class TestStateFileValidation:
    def test_invalid_json_exits_2(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert main(["analyze", "--psi", str(path), "--schmidt-b", "1,0"]) == 2

    def test_missing_file_exits_2(self):
        assert main(["analyze", "--psi", "/no/such/file.json", "--schmidt-b", "1,0"]) == 2

    def test_duplicate_index_exits_2(self, tmp_path):
        path = write_state(
            tmp_path / "dup.json", [2, 2], [[0, 0, RT2, 0], [0, 0, RT2, 0]]
        )
        assert main(["analyze", "--psi", path, "--schmidt-b", "1,0"]) == 2

    def test_out_of_range_index_exits_2(self, tmp_path):
        path = write_state(tmp_path / "oob.json", [2, 2], [[0, 2, 1.0, 0]])
        assert main(["analyze", "--psi", path, "--schmidt-b", "1,0"]) == 2

    def test_missing_dims_exits_2(self, tmp_path):
        path = tmp_path / "nodims.json"
        path.write_text(json.dumps({"amps": [[0, 0, 1.0, 0.0]]}))
        assert main(["analyze", "--psi", str(path), "--schmidt-b", "1,0"]) == 2

    def test_norm_violation_exits_3(self, tmp_path):
        path = write_state(
            tmp_path / "short.json", [2, 2], [[0, 0, 0.5, 0], [1, 1, 0.5, 0]]
        )
        assert main(["analyze", "--psi", path, "--schmidt-b", "1,0"]) == 3


class TestPaperVerify:
    def test_default_grid_csv_report(self, tmp_path, capsys):
        out = tmp_path / "report.csv"
        assert main(["paper-verify", "--out", str(out)]) == 0
        summary = capsys.readouterr().out
        assert summary.startswith("rows=99 ")
        assert "no_deleting_universal=true" in summary
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(REPORT_FIELDS)
        assert len(lines) == 100
        assert "\r" not in out.read_bytes().decode()

    def test_stdout_mode_prints_summary_to_stderr(self, capsys):
        assert main(["paper-verify", "--steps", "5"]) == 0
        captured = capsys.readouterr()
        assert captured.out.splitlines()[0] == ",".join(REPORT_FIELDS)
        assert captured.err.startswith("rows=5 ")

    def test_high_band_rows_all_incomparable(self, tmp_path):
        out = tmp_path / "high.csv"
        args = [
            "paper-verify",
            "--alpha-min",
            "0.6",
            "--alpha-max",
            "0.99",
            "--steps",
            "40",
            "--out",
            str(out),
        ]
        assert main(args) == 0
        rows = out.read_text().splitlines()[1:]
        assert len(rows) == 40
        verdict_col = REPORT_FIELDS.index("verdict")
        assert all(r.split(",")[verdict_col] == "Incomparable" for r in rows)

    def test_json_report(self, tmp_path):
        out = tmp_path / "report.json"
        assert main(["paper-verify", "--steps", "7", "--format", "json", "--out", str(out)]) == 0
        rows = json.loads(out.read_text())
        assert len(rows) == 7
        assert all(tuple(r.keys()) == REPORT_FIELDS for r in rows)
        assert rows[0]["alpha"] == pytest.approx(0.01)
        assert all(isinstance(r["backward_blocked"], bool) for r in rows)

    def test_repeated_runs_are_byte_identical(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        assert main(["paper-verify", "--out", str(a)]) == 0
        assert main(["paper-verify", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_bad_steps_exits_2(self):
        assert main(["paper-verify", "--steps", "1"]) == 2

    def test_bad_range_exits_2(self):
        assert main(["paper-verify", "--alpha-min", "0.9", "--alpha-max", "0.2"]) == 2

    def test_unwritable_out_exits_4(self, capsys):
        code = main(["paper-verify", "--out", "/no/such/dir/report.csv"])
        assert code == 4
        assert capsys.readouterr().err.startswith("error:")


class TestThreshold:
    def test_boundary_location(self, capsys):
        assert main(["threshold", "--lo", "0.3", "--hi", "0.9"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert 0.50 < out["alpha_star"] < 0.60
        lo, hi = out["bracket"]
        assert hi - lo <= 1e-10
        assert out["verdict_below"] == "ForwardOnly"
        assert out["verdict_above"] == "Incomparable"
        assert out["grid_sign_changes"] == 1

    def test_windows_without_boundary_exit_5(self, capsys):
        assert main(["threshold", "--lo", "0.7", "--hi", "0.9"]) == 5
        assert capsys.readouterr().err.startswith("error:")

    def test_nonpositive_tol_exits_2(self):
        assert main(["threshold", "--lo", "0.3", "--hi", "0.9", "--tol", "0"]) == 2


class TestShowState:
    def test_initial_dump(self, capsys):
        assert main(["show-state", "--alpha", "0.5", "--which", "initial"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["dims"] == [3, 32]
        assert 0 < len(out["amps"]) <= 96
        assert out["schmidt"] == pytest.approx(
            [17 / 47, 15 / 47, 15 / 47], abs=1e-10
        )

    def test_final_dump(self, capsys):
        assert main(["show-state", "--alpha", "0.5", "--which", "final"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["dims"] == [3, 32]
        assert out["schmidt"] == pytest.approx(
            [35 / 95, 33 / 95, 27 / 95], abs=1e-10
        )

    def test_round_trip_through_analyze(self, tmp_path, capsys):
        assert main(["show-state", "--alpha", "0.73", "--which", "final"]) == 0
        dump = capsys.readouterr().out
        path = tmp_path / "state.json"
        path.write_text(dump)
        reference = json.loads(dump)["schmidt"]

        assert main(["analyze", "--psi", str(path), "--phi", str(path)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["verdict"] == "Equivalent"
        np.testing.assert_allclose(out["schmidt_a"], reference, atol=1e-10)

    def test_blank_choice_leaves_spectrum_alone(self, capsys):
        assert main(["show-state", "--alpha", "0.4", "--which", "initial"]) == 0
        base = json.loads(capsys.readouterr().out)["schmidt"]
        code = main(
            ["show-state", "--alpha", "0.4", "--which", "initial", "--blank", "plus"]
        )
        assert code == 0
        other = json.loads(capsys.readouterr().out)["schmidt"]
        np.testing.assert_allclose(other, base, atol=1e-12)

    def test_csv_format(self, capsys):
        code = main(
            ["show-state", "--alpha", "0.5", "--which", "initial", "--format", "csv"]
        )
        assert code == 0
        captured = capsys.readouterr()
        assert captured.out.splitlines()[0] == "i,j,re,im"
        assert captured.err.startswith("schmidt=")

    def test_endpoint_alpha_exits_2(self):
        assert main(["show-state", "--alpha", "1.0", "--which", "initial"]) == 2

    def test_out_of_range_alpha_exits_2(self):
        assert main(["show-state", "--alpha", "1.5", "--which", "initial"]) == 2


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "locc_audit.cli",
                "analyze",
                "--schmidt-a",
                "0.5,0.5",
                "--schmidt-b",
                "1,0",
            ],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["verdict"] == "ForwardOnly"

    def test_console_script(self):
        script = shutil.which("locc-audit")
        if script is None:
            pytest.skip("console script not on PATH in this environment")
        proc = subprocess.run(
            [script, "threshold", "--lo", "0.4", "--hi", "0.7", "--tol", "1e-6"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert 0.50 < json.loads(proc.stdout)["alpha_star"] < 0.60
