import json
import math
import subprocess
import sys

import numpy as np
import pytest

PI = math.pi
SQ2 = math.sqrt(2.0)


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "spinchannel.cli", *args],
        capture_output=True,
        text=True,
    )


class TestDesignCommand:
    def test_eight_site_report(self):
        result = run_cli(
            "design", "--n", "8", "--model", "xx", "--param", "2", "--tp", "0.5pi",
            "--format", "json",
        )
        assert result.returncode == 0
        report = json.loads(result.stdout)
        assert list(report) == [
            "couplings",
            "target_spectrum",
            "achieved_spectrum",
            "spectral_residual",
            "t_p",
            "fidelity_at_tp",
        ]
        expected = np.sqrt([27.0, 44.0, 35.0, 144.0, 35.0, 44.0, 27.0])
        assert np.allclose(report["couplings"], expected, atol=1e-10)
        assert report["spectral_residual"] <= 1e-8
        assert report["fidelity_at_tp"] >= 1.0 - 1e-9

    def test_floats_round_trip_exactly(self):
        result = run_cli("design", "--n", "6", "--tp", "0.5pi", "--param", "1")
        report = json.loads(result.stdout)
        assert report["couplings"][0] == math.sqrt(5.0)
        assert report["t_p"] == PI / 2

    def test_explicit_spectrum(self):
        result = run_cli(
            "design", "--n", "4", "--tp", "0.5pi", "--spectrum=-3,-1,1,3"
        )
        assert result.returncode == 0
        report = json.loads(result.stdout)
        assert np.allclose(
            report["couplings"], [math.sqrt(3), 2.0, math.sqrt(3)], atol=1e-12
        )

    def test_xxx_design_rejected(self):
        result = run_cli("design", "--n", "4", "--model", "xxx", "--tp", "1",
                         "--param", "1,-1")
        assert result.returncode == 2
        assert "error" in result.stderr

    def test_csv_format_rejected(self):
        result = run_cli("design", "--n", "6", "--tp", "1", "--param", "1",
                         "--format", "csv")
        assert result.returncode == 2

    def test_invalid_family_params_exit_2(self):
        result = run_cli("design", "--n", "4", "--tp", "1", "--param", "1,-2")
        assert result.returncode == 2
        assert "even" in result.stderr

    def test_degenerate_spectrum_exit_3(self):
        result = run_cli(
            "design", "--n", "4", "--tp", "1",
            "--spectrum=-1.00000001,-1,1,1.00000001",
        )
        assert result.returncode == 3

    def test_unknown_option_exit_2(self):
        result = run_cli("design", "--n", "6", "--tp", "1", "--param", "1",
                         "--bogus", "1")
        assert result.returncode == 2


class TestScanCommand:
    def test_uniform_three_site_csv(self):
        result = run_cli(
            "scan", "--model", "xx", "--couplings", "1,1", "--n", "3",
            "--tmax", "2pi", "--samples", "10000",
        )
        assert result.returncode == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "t,fidelity"
        assert not any(line != line.rstrip() for line in lines)
        rows = [tuple(map(float, line.split(","))) for line in lines[1:]]
        best = max(rows, key=lambda r: r[1])
        assert best[0] == pytest.approx(PI / SQ2, abs=1e-6)
        assert best[1] >= 1.0 - 1e-9

    def test_json_format(self):
        result = run_cli(
            "scan", "--couplings", "1", "--tmax", "pi", "--samples", "101",
            "--format", "json",
        )
        report = json.loads(result.stdout)
        assert report["is_perfect"]
        assert report["argmax_time"] == pytest.approx(PI / 2, abs=1e-6)
        assert len(report["samples"]) == 101

    def test_bad_tmax_exit_2(self):
        result = run_cli("scan", "--couplings", "1,1", "--tmax", "0")
        assert result.returncode == 2


class TestVerifyCommand:
    def test_perfect_design(self):
        result = run_cli(
            "verify", "--model", "xx",
            "--couplings", "2.23606797749979,2.8284271247461903,3,"
                           "2.8284271247461903,2.23606797749979",
            "--tp", "0.5pi",
        )
        report = json.loads(result.stdout)
        assert report["is_perfect"] is True
        assert report["max_phase_misalignment"] <= 1e-9

    def test_near_miss(self):
        result = run_cli(
            "verify", "--model", "xxx", "--couplings", "1,1,1", "--tp", "29pi"
        )
        report = json.loads(result.stdout)
        assert report["is_perfect"] is False
        assert report["fidelity_at_tp"] == pytest.approx(0.99981, abs=1e-3)


class TestEntangleCommand:
    def test_thermal(self):
        result = run_cli("entangle", "--kind", "thermal4", "--j", "1", "--temp", "1")
        report = json.loads(result.stdout)
        assert report["concurrence"] == pytest.approx(0.0441060031108176, abs=1e-12)

    def test_pure(self):
        result = run_cli(
            "entangle", "--kind", "pure", "--model", "xx",
            "--couplings", "1.7320508075688772,2,1.7320508075688772",
            "--index", "1",
        )
        report = json.loads(result.stdout)
        assert report["concurrence"] == pytest.approx(0.25, abs=1e-10)

    def test_missing_arguments_exit_2(self):
        assert run_cli("entangle", "--kind", "thermal4", "--j", "1").returncode == 2


class TestTableCommand:
    def test_near_perfect_maxima(self):
        result = run_cli("table", "--which", "2")
        assert result.returncode == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "J,t,max_fidelity"
        assert len(lines) == 11
        expected = {
            1: (29, 0.99981), 2: (17, 0.99978), 3: (6, 0.99914), 4: (8, 0.99970),
            5: (10, 0.99988), 6: (12, 0.99994), 7: (14, 0.99997), 8: (16, 0.99998),
            9: (18, 0.99999), 10: (20, 0.99999),
        }
        for line in lines[1:]:
            j_text, t_text, f_text = line.split(",")
            j = int(j_text)
            center, fidelity = expected[j]
            assert float(t_text) == pytest.approx(center * PI, abs=PI)
            assert float(f_text) == pytest.approx(fidelity, abs=1e-3)
            # never perfect; the tightest row (J=10) peaks at 1 - 7.6e-6
            assert float(f_text) < 1.0 - 5e-6

    def test_eigensystem_rows(self):
        result = run_cli("table", "--which", "1", "--format", "json")
        rows = json.loads(result.stdout)
        assert len(rows) == 12
        first = [r for r in rows if r["j"] == 1 and r["m"] == 4][0]
        assert first["energy"] == pytest.approx(1.5, abs=1e-12)
        assert first["c1"] == pytest.approx(0.5, abs=1e-12)
        assert first["relative_sign"] == 1


class TestDeterminismAndConfig:
    def test_byte_identical_repeats(self):
        args = ("design", "--n", "8", "--tp", "0.5pi", "--param", "2")
        first, second = run_cli(*args), run_cli(*args)
        assert first.stdout == second.stdout
        table_a, table_b = run_cli("table", "--which", "2"), run_cli("table", "--which", "2")
        assert table_a.stdout == table_b.stdout

    def test_config_defaults_and_override(self, tmp_path):
        cfg = tmp_path / "scan.cfg"
        cfg.write_text("samples = 51  # coarse grid\ntol = 1e-6\n", encoding="utf-8")
        result = run_cli(
            "scan", "--couplings", "1", "--tmax", "pi", "--format", "json",
            "--config", str(cfg),
        )
        report = json.loads(result.stdout)
        assert len(report["samples"]) == 51
        assert report["tolerance_used"] == 1e-6
        result = run_cli(
            "scan", "--couplings", "1", "--tmax", "pi", "--format", "json",
            "--config", str(cfg), "--samples", "11",
        )
        assert len(json.loads(result.stdout)["samples"]) == 11

    def test_unknown_config_key_exit_2(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("grid = 10\n", encoding="utf-8")
        result = run_cli("scan", "--couplings", "1", "--tmax", "1",
                         "--config", str(cfg))
        assert result.returncode == 2

    def test_pi_suffix_parsing(self):
        result = run_cli(
            "verify", "--couplings", "1", "--tp", "0.5pi", "--format", "json"
        )
        assert json.loads(result.stdout)["t_p"] == PI / 2
        assert run_cli("verify", "--couplings", "1", "--tp", "halfpi").returncode == 2
