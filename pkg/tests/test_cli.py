import math
import re

import numpy as np
import pytest

from tfsynth import cli
from tfsynth.io import read_csv, read_grid


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def summary(out):
    return dict(re.findall(r"^(\w+) = (\S+)$", out, flags=re.M))


def test_jta_reports_msp(tmp_path, capsys):
    code, out, err = run(capsys, "jta", "--a", "0.11284", "--b", "13.888", "--delta", "0.4237", "--phi", "pi",
                         "--n", "512", "--out", str(tmp_path))
    assert code == 0, err
    s = summary(out)
    assert 0.95 <= float(s["msp"]) <= 1.05
    jti = read_grid(tmp_path / "jta_intensity.grid")
    assert jti.values.shape == (512, 512) and jti.domain.value == "time"
    assert (tmp_path / "jta_intensity.pgm").exists()
    assert float(s["jti_separation_ps"]) == pytest.approx(1 / (math.sqrt(2) * 0.4237), rel=0.01)


def test_hom_fitted_phase(tmp_path, capsys):
    code, out, err = run(capsys, "hom", "--delta", "0.2131", "--phi", "0.86pi", "--tau", "-15:15:0.05",
                         "--out", str(tmp_path))
    assert code == 0, err
    s = summary(out)
    assert float(s["fit_phase_pi"]) == pytest.approx(0.86, abs=0.01)
    unit, x, p = read_csv(tmp_path / "hom.csv")
    assert unit == "ps" and x.size == 601


def test_herald_sweep_table(tmp_path, capsys):
    code, out, err = run(capsys, "herald", "--sweep-temp", "35,45,55,65", "--out", str(tmp_path))
    assert code == 0, err
    rows = [line.split() for line in out.strip().splitlines()[1:]]
    assert [int(r[3]) for r in rows] == [1, 2, 3, 4]
    assert [int(r[4]) for r in rows] == [1, 1, 1, 1]
    assert [int(r[5]) for r in rows] == [1, 2, 3, 4]
    assert (tmp_path / "heralded_temporal_65C.csv").exists()


def test_herald_single(tmp_path, capsys):
    code, out, _ = run(capsys, "herald", "--delta", "0.4237", "--phi", "pi", "--out", str(tmp_path))
    assert code == 0
    s = summary(out)
    assert (s["temporal_peaks"], s["spectral_peaks"], s["blurred_peaks"]) == ("4", "1", "4")


def test_jsa_outputs(tmp_path, capsys):
    code, out, _ = run(capsys, "jsa", "--delta", "0.4237", "--out", str(tmp_path), "--heatmap", "no")
    assert code == 0
    assert summary(out)["jsi_peaks"] == "2"
    assert (tmp_path / "jsa_amplitude.grid").exists()
    assert not (tmp_path / "jsa_intensity.pgm").exists()


def test_physical_model_runs(tmp_path, capsys):
    code, out, err = run(capsys, "jsa", "--model", "physical", "--delta", "0.4237", "--out", str(tmp_path))
    assert code == 0, err
    assert summary(out)["jsi_peaks"] == "2"


def test_calibrate_table(tmp_path, capsys):
    code, out, _ = run(capsys, "calibrate", "--out", str(tmp_path))
    assert code == 0
    s = summary(out)
    assert float(s["separation_slope_thz_per_c"]) == pytest.approx(0.012, rel=1e-9)
    assert float(s["phase_slope_pi_per_c"]) == pytest.approx(-0.095, rel=1e-9)
    table = np.loadtxt(tmp_path / "calibration.csv", delimiter=",")
    assert table.shape == (7, 3)


def test_calibrate_points(tmp_path, capsys):
    pts = tmp_path / "pts.csv"
    pts.write_text("# C,THz\n35,0.14\n45,0.26\n55,0.38\n")
    code, out, _ = run(capsys, "calibrate", "--points", str(pts))
    assert code == 0
    assert float(summary(out)["slope"]) == pytest.approx(0.012, rel=1e-9)


def test_config_file_and_override(tmp_path, capsys):
    ini = tmp_path / "run.ini"
    ini.write_text(f"[biphoton]\ndelta = 0.2131\nphi = 0\n[output]\nout = {tmp_path / 'fromfile'}\n")
    code, out, _ = run(capsys, "hom", "--config", str(ini), "--phi", "0.86pi")
    assert code == 0
    assert float(summary(out)["fit_phase_pi"]) == pytest.approx(0.86, abs=0.01)
    assert (tmp_path / "fromfile" / "hom.csv").exists()
    code, out, _ = run(capsys, "hom", "--config", str(ini))
    assert phase_pi_near_zero(float(summary(out)["fit_phase_pi"]))


def phase_pi_near_zero(x):
    return min(abs(x), abs(x - 2)) <= 0.01


def test_deterministic_outputs(tmp_path, capsys):
    for name in ("a", "b"):
        assert run(capsys, "jta", "--delta", "0.2131", "--n", "256", "--out", str(tmp_path / name))[0] == 0
    for fname in ("jta_amplitude.grid", "jta_intensity.grid", "jta_intensity.pgm", "heralded_temporal.csv"):
        assert (tmp_path / "a" / fname).read_bytes() == (tmp_path / "b" / fname).read_bytes()


@pytest.mark.parametrize("argv", [
    ["jta", "--n", "100"],
    ["jta", "--phi", "bogus"],
    ["jta", "--delta", "40"],
    ["hom", "--tau", "1:0:1"],
    ["bogus"],
    ["jta", "--no-such-flag", "1"],
    ["jta", "--config", "/nonexistent/run.ini"],
])
def test_config_errors_exit_2(tmp_path, capsys, argv):
    code, out, err = run(capsys, *argv, "--out", str(tmp_path))
    assert code == 2
    assert err and not out


def test_numeric_failure_exits_3(tmp_path, capsys):
    # a single-point scan cannot be fitted
    code, out, err = run(capsys, "hom", "--delta", "0.2", "--tau", "0:0.1:1", "--out", str(tmp_path))
    assert code == 3
    assert "FitDegenerate" in err


def test_unwritable_output_exits_2(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run(capsys, "jsa", "--out", str(blocker / "sub"))
    assert code == 2 and "I/O" in err


def test_help_exit_0(capsys):
    assert run(capsys, "jta", "--help")[0] == 0


def test_negative_values_joined():
    assert cli._join_negative_values(["--tau", "-15:15:0.05", "--phi", "-0.5pi", "--n", "8"]) == [
        "--tau=-15:15:0.05", "--phi=-0.5pi", "--n", "8"]
