import json
import math
import re
from pathlib import Path

import numpy as np
import pytest

from kirchhoff_beam.cli import main

PI = math.pi


def run_cli(*args):
    return main([str(a) for a in args])


def load_report(path: Path) -> dict:
    return json.loads(path.read_text())


def strip_timing(text: str) -> str:
    return re.sub(r'^\s*"timing_ms":.*$', "", text, flags=re.M)


class TestSolveCommands:
    def test_eigen_reference(self, tmp_path):
        out = tmp_path / "eigen.json"
        code = run_cli("solve-eigen", "--a", 1, "--b", 1, "--lambda", 117.1483,
                       "-o", out, "--no-plot")
        assert code == 0
        report = load_report(out)
        assert report["result"]["status"] == "converged"
        assert report["result"]["amplitude"] == pytest.approx(0.4501582, abs=1e-6)
        assert Path(report["solution_csv_path"]).exists()

    def test_eigen_below_threshold_exits_2(self, tmp_path):
        out = tmp_path / "eigen.json"
        code = run_cli("solve-eigen", "--a", 1, "--b", 1, "--lambda", 100,
                       "-o", out, "--no-plot")
        assert code == 2
        report = load_report(out)
        assert report["result"]["status"] == "no_positive_solution"
        assert "reason" in report["result"]

    def test_eigen_degenerate_b_exits_2(self, tmp_path):
        out = tmp_path / "eigen.json"
        code = run_cli("solve-eigen", "--b", 0, "--lambda", 200, "-o", out,
                       "--no-plot")
        assert code == 2
        assert load_report(out)["result"]["status"] == "parameter_degenerate"

    def test_sublinear_negative_lambda_exits_2(self, tmp_path):
        out = tmp_path / "sub.json"
        code = run_cli("solve-sublinear", "--lambda", -1, "-o", out, "--no-plot")
        assert code == 2
        assert load_report(out)["result"]["status"] == "no_positive_solution"

    def test_nonlocal_solution_csv_roundtrip(self, tmp_path):
        out = tmp_path / "nl.json"
        code = run_cli("solve-nonlocal", "--g", "sin-pi", "--a", 1, "--b", 1,
                       "-o", out, "--no-plot")
        assert code == 0
        report = load_report(out)
        data = np.loadtxt(report["solution_csv_path"], delimiter=",", skiprows=1)
        # 17 significant digits round-trip the stored sup norm exactly.
        assert float(np.max(np.abs(data[:, 1]))) == report["result"]["sup_norm"]

    def test_linear_solve(self, tmp_path):
        out = tmp_path / "lin.json"
        code = run_cli("solve-linear", "--g", "sin-pi", "--a", 1, "--b", 0,
                       "--R", 0, "-o", out, "--no-plot")
        assert code == 0
        report = load_report(out)
        assert report["result"]["sup_norm"] == pytest.approx(
            1.0 / (PI ** 4 + PI ** 2), abs=1e-8)

    def test_deterministic_output(self, tmp_path):
        out = tmp_path / "det.json"
        args = ("solve-nonlocal", "--g", "sin-pi", "-o", out, "--no-plot")
        assert run_cli(*args) == 0
        first = out.read_text()
        assert run_cli(*args) == 0
        second = out.read_text()
        assert strip_timing(first) == strip_timing(second)

    def test_plot_rendering(self, tmp_path):
        out = tmp_path / "plot.json"
        code = run_cli("solve-eigen", "--lambda", 150, "-o", out)
        assert code == 0
        report = load_report(out)
        assert report["figure_path"] is not None
        assert Path(report["figure_path"]).exists()


class TestSweepCommand:
    def test_eigen_sweep_csv(self, tmp_path):
        out = tmp_path / "sweep.json"
        code = run_cli("sweep", "--branch", "eigen",
                       "--lambda-grid", "100,110,117.1483,150,194.8182",
                       "-o", out, "--no-plot")
        assert code == 0
        csv_path = load_report(out)["solution_csv_path"]
        lines = Path(csv_path).read_text().splitlines()
        assert lines[0] == "lambda,sup_norm,R,iterations,status"
        statuses = [ln.split(",")[-1] for ln in lines[1:]]
        assert statuses == ["no_solution"] + ["converged"] * 4

    def test_sublinear_sweep_with_figure(self, tmp_path):
        out = tmp_path / "sweep.json"
        code = run_cli("sweep", "--branch", "sublinear", "--n", 65,
                       "--lambda-grid=-1,0,1", "-o", out)
        assert code == 0
        report = load_report(out)
        assert report["result"]["no_solution"] == 1
        assert report["result"]["converged"] == 2
        assert Path(report["figure_path"]).exists()

    def test_log_spaced_grid(self, tmp_path):
        out = tmp_path / "sweep.json"
        code = run_cli("sweep", "--branch", "eigen", "--lambda-min", 120,
                       "--lambda-max", 200, "--points", 5, "--spacing", "log",
                       "-o", out, "--no-plot")
        assert code == 0
        lines = Path(load_report(out)["solution_csv_path"]).read_text().splitlines()
        assert len(lines) == 6

    def test_missing_grid_is_invalid(self, tmp_path):
        assert run_cli("sweep", "--branch", "eigen", "--no-plot",
                       "-o", tmp_path / "x.json") == 4


class TestVerifyCommand:
    def test_fresh_nonlocal_passes(self, tmp_path, capsys):
        out = tmp_path / "nl.json"
        run_cli("solve-nonlocal", "--g", "sin-pi", "-o", out, "--no-plot")
        assert run_cli("verify", out) == 0
        assert "FAIL" not in capsys.readouterr().out

    def test_corruption_fails_residual_check(self, tmp_path, capsys):
        out = tmp_path / "nl.json"
        run_cli("solve-nonlocal", "--g", "sin-pi", "-o", out, "--no-plot")
        csv_path = Path(load_report(out)["solution_csv_path"])
        lines = csv_path.read_text().splitlines()
        parts = lines[100].split(",")
        parts[1] = repr(float(parts[1]) + 1e-3)
        lines[100] = ",".join(parts)
        csv_path.write_text("\n".join(lines) + "\n")
        assert run_cli("verify", out) == 3
        assert "[FAIL] residual" in capsys.readouterr().out

    def test_eigen_energy_check(self, tmp_path, capsys):
        out = tmp_path / "eigen.json"
        run_cli("solve-eigen", "--lambda", 150, "-o", out, "--no-plot")
        assert run_cli("verify", out) == 0
        assert "[PASS] energy_equals_stretch" in capsys.readouterr().out

    def test_sublinear_report_passes(self, tmp_path):
        out = tmp_path / "sub.json"
        run_cli("solve-sublinear", "--lambda", 1, "--c1", 1, "--p", 0.5,
                "-o", out, "--no-plot")
        assert run_cli("verify", out) == 0

    def test_malformed_report_exits_4(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run_cli("verify", bad) == 4

    def test_sweep_report_not_verifiable(self, tmp_path):
        out = tmp_path / "sweep.json"
        run_cli("sweep", "--branch", "eigen", "--lambda-grid", "150", "-o", out,
                "--no-plot")
        assert run_cli("verify", out) == 4


class TestInvalidConfig:
    def test_even_grid(self, tmp_path):
        assert run_cli("solve-eigen", "--lambda", 150, "--n", 256,
                       "-o", tmp_path / "x.json", "--no-plot") == 4

    def test_unknown_command(self):
        assert run_cli("frobnicate") == 4

    def test_unknown_rhs_name(self, tmp_path):
        assert run_cli("solve-nonlocal", "--g", "bump",
                       "-o", tmp_path / "x.json", "--no-plot") == 4

    def test_bad_nonlinearity(self, tmp_path):
        assert run_cli("solve-sublinear", "--lambda", 1, "--c1", 0, "--c2", 0,
                       "-o", tmp_path / "x.json", "--no-plot") == 4
