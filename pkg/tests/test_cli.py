"""CLI behavior: reports, composition, exit codes, determinism."""

import json
import math
import subprocess
import sys

import pytest

from fockdensity.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_thresholds_report(capsys):
    code, out, _ = run_cli(capsys, "thresholds", "--alpha", "1")
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "thresholds"
    res = report["result"]
    assert res["tung"] == 2.0
    assert res["improved"] == pytest.approx(1.904626, abs=1e-6)
    assert res["covering"] == pytest.approx(1.099636, abs=1e-6)
    assert res["critical"] == pytest.approx(0.318310, abs=1e-6)
    assert report["config"]["alpha"] == 1.0


def test_lattice_writes_points_and_report(capsys, tmp_path):
    out_file = tmp_path / "pts.json"
    code, out, _ = run_cli(capsys, "lattice", "--kind", "hex", "--spacing", "2",
                           "--window", "20", "--output", str(out_file))
    assert code == 0
    report = json.loads(out)
    assert report["result"]["points_file"] == str(out_file)
    assert report["result"]["min_separation"] == pytest.approx(2.0, rel=1e-9)
    points = json.loads(out_file.read_text())
    assert len(points) == report["result"]["count"] > 50


def test_lattice_csv_output(capsys, tmp_path):
    out_file = tmp_path / "pts.csv"
    code, out, _ = run_cli(capsys, "lattice", "--kind", "square", "--spacing", "1",
                           "--window", "4", "--output", str(out_file))
    assert code == 0
    lines = out_file.read_text().strip().split("\n")
    assert len(lines) == 25  # 5x5 grid
    assert all(len(line.split(",")) == 2 for line in lines)


def test_separation_command(capsys, tmp_path):
    f = tmp_path / "two.csv"
    f.write_text("0,0\n3,4\n")
    code, out, _ = run_cli(capsys, "separation", "--input", str(f))
    assert code == 0
    assert json.loads(out)["result"]["min_separation"] == 5.0


def test_pipeline_lattice_to_density():
    # lattice | density reading stdin, per the composition contract
    gen = subprocess.run(
        [sys.executable, "-m", "fockdensity.cli", "lattice", "--kind", "hex",
         "--spacing", "1", "--window", "40"],
        capture_output=True, text=True, check=True)
    dens = subprocess.run(
        [sys.executable, "-m", "fockdensity.cli", "density", "--input", "-"],
        input=gen.stdout, capture_output=True, text=True, check=True)
    report = json.loads(dens.stdout)
    hex_density = 2.0 / math.sqrt(3.0)
    assert report["result"]["upper"]["value"] == pytest.approx(hex_density, rel=0.02)
    assert report["result"]["lower"]["value"] == pytest.approx(hex_density, rel=0.02)


def test_certify_interp_reports_the_improvement_gap(capsys, tmp_path):
    pts = tmp_path / "pts.json"
    run_cli(capsys, "lattice", "--kind", "hex", "--spacing", "1.95",
            "--window", "30", "--output", str(pts))
    code, out, _ = run_cli(capsys, "certify-interp", "--input", str(pts),
                           "--alpha", "1")
    assert code == 0
    result = json.loads(out)["result"]
    cert = result["certificate"]
    assert cert["verdict"] == "certified_interpolating"
    assert cert["route"] == "separation_thm5"
    comparison = result["comparison"]
    assert comparison["certified_by_improved"] is True
    assert comparison["certified_by_classic"] is False
    assert comparison["improvement_gap"] is True


def test_certify_sampling_command(capsys, tmp_path):
    pts = tmp_path / "pts.json"
    run_cli(capsys, "lattice", "--kind", "hex", "--spacing", "1.8",
            "--window", "12", "--output", str(pts))
    code, out, _ = run_cli(capsys, "certify-sampling", "--input", str(pts),
                           "--alpha", "1", "--sigma", "1.05", "--window", "6",
                           "--grid-step", "0.01")
    assert code == 0
    cert = json.loads(out)["result"]["certificate"]
    assert cert["verdict"] == "certified_sampling"
    assert cert["route"] == "covering_thm6"
    assert cert["bound"] == pytest.approx(0.349116, abs=1e-6)


def test_cover_command(capsys, tmp_path):
    pts = tmp_path / "pts.json"
    run_cli(capsys, "lattice", "--kind", "hex", "--spacing", "1.8",
            "--window", "12", "--output", str(pts))
    code, out, _ = run_cli(capsys, "cover", "--input", str(pts), "--sigma", "1.0",
                           "--window", "6", "--grid-step", "0.01")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["covered"] is False
    assert result["witness"] is not None
    assert result["covering_radius"] == pytest.approx(1.8 / math.sqrt(3), abs=0.02)


def test_fock_gram_command(capsys, tmp_path):
    pts = tmp_path / "two.csv"
    pts.write_text("0,0\n2,0\n")
    code, out, _ = run_cli(capsys, "fock-gram", "--input", str(pts), "--alpha", "1")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["n"] == 2
    assert res["lambda_min"] == pytest.approx(1 - math.exp(-2), abs=1e-9)
    assert res["lambda_max"] == pytest.approx(1 + math.exp(-2), abs=1e-9)
    assert res["gershgorin_lower_bound"] == pytest.approx(1 - math.exp(-2), abs=1e-12)


def test_fock_interp_command(capsys, tmp_path):
    pts = tmp_path / "one.csv"
    pts.write_text("1,2\n")
    targets = tmp_path / "t.json"
    targets.write_text("[[3.0, -1.0]]")
    code, out, _ = run_cli(capsys, "fock-interp", "--input", str(pts),
                           "--alpha", "1", "--targets", str(targets))
    assert code == 0
    res = json.loads(out)["result"]
    re, im = res["coefficients"][0]
    expected = complex(3, -1) * math.exp(-2.5)
    assert complex(re, im) == pytest.approx(expected, rel=1e-12)
    assert res["residual_inf"] <= 1e-14


def test_fock_sweep_writes_csv(capsys, tmp_path):
    csv_file = tmp_path / "sweep.csv"
    code, out, _ = run_cli(capsys, "fock-sweep", "--alpha", "1",
                           "--spacings", "2.2,2.0,1.8,1.6",
                           "--output", str(csv_file))
    assert code == 0
    rows = json.loads(out)["result"]["rows"]
    assert [r["sigma"] for r in rows] == [2.2, 2.0, 1.8, 1.6]
    lines = csv_file.read_text().strip().split("\n")
    assert lines[0] == "sigma,lambda_min,lambda_max,condition"
    assert len(lines) == 5


# ---------------------------------------------------------------------------
# exit codes


def test_missing_input_exits_2(capsys, tmp_path):
    code, _, err = run_cli(capsys, "separation", "--input",
                           str(tmp_path / "missing.json"))
    assert code == 2
    assert "error:" in err


def test_malformed_csv_exits_2(capsys, tmp_path):
    f = tmp_path / "bad.csv"
    f.write_text("not,valid,csv\n")
    code, _, err = run_cli(capsys, "separation", "--input", str(f))
    assert code == 2
    assert "expected 'x,y'" in err


def test_duplicate_points_exit_2(capsys, tmp_path):
    f = tmp_path / "dup.csv"
    f.write_text("1,2\n1,2\n")
    code, _, err = run_cli(capsys, "separation", "--input", str(f))
    assert code == 2


def test_not_a_covering_exits_3(capsys, tmp_path):
    pts = tmp_path / "pts.json"
    run_cli(capsys, "lattice", "--kind", "hex", "--spacing", "1.8",
            "--window", "30", "--output", str(pts))
    code, _, err = run_cli(capsys, "covering", "--input", str(pts), "--r0", "0.9",
                           "--zeta-window", "3.6", "--radii", "8,10,12",
                           "--window", "30")
    assert code == 3
    assert "not a covering" in err


def test_window_too_small_exits_2(capsys, tmp_path):
    pts = tmp_path / "pts.json"
    run_cli(capsys, "lattice", "--kind", "hex", "--spacing", "1", "--window", "20",
            "--output", str(pts))
    code, _, err = run_cli(capsys, "density", "--input", str(pts),
                           "--radii", "8,9,10", "--zeta-window", "2")
    assert code == 2
    assert "window too small" in err


def test_unknown_flag_exits_2():
    proc = subprocess.run(
        [sys.executable, "-m", "fockdensity.cli", "thresholds", "--alpha", "1",
         "--bogus"],
        capture_output=True, text=True)
    assert proc.returncode == 2
