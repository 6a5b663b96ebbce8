import json

import numpy as np
import pytest

from helpers import POLFULL_H, POLFULL_POWER
from pickpoly.cli import main

POLFULL_POWER_JSON = {"basis": "power", "degree": 4, "coeffs": list(map(float, POLFULL_POWER))}
POLFULL_H_JSON = {"basis": "bernstein", "degree": 2, "coeffs": list(map(float, POLFULL_H))}
COUNTEREXAMPLE_JSON = {"basis": "power", "degree": 4, "coeffs": [1.0, 0.0, 0.0, -1.0, 1.0]}
MIX_MODEL_JSON = {"model": "mix", "psi": 0.9}


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_accepts_quartic(tmp_path, capsys):
    path = write(tmp_path / "poly.json", POLFULL_POWER_JSON)
    code, out, _ = run(capsys, "validate", "--in", path)
    assert code == 0
    assert json.loads(out)["valid"] is True


def test_validate_rejects_counterexample(tmp_path, capsys):
    path = write(tmp_path / "poly.json", COUNTEREXAMPLE_JSON)
    code, out, _ = run(capsys, "validate", "--in", path)
    assert code == 0
    report = json.loads(out)
    assert report["valid"] is False
    assert report["violations"][0]["rule"] == "convexity"
    assert report["violations"][0]["witness"] == pytest.approx(0.25, abs=0.05)


def test_lorentz_subcommand(tmp_path, capsys):
    path = write(tmp_path / "h.json", POLFULL_H_JSON)
    code, out, _ = run(capsys, "lorentz", "--in", path)
    assert code == 0
    assert json.loads(out) == {"degree": 6}


def test_convert_roundtrip(tmp_path, capsys):
    path = write(tmp_path / "p.json", POLFULL_POWER_JSON)
    code, out, _ = run(capsys, "convert", "--in", path)
    bern = json.loads(out)
    assert code == 0 and bern["basis"] == "bernstein" and bern["degree"] == 4
    path2 = write(tmp_path / "b.json", bern)
    code, out2, _ = run(capsys, "convert", "--in", path2)
    back = json.loads(out2)
    assert back["basis"] == "power"
    assert np.allclose(back["coeffs"], POLFULL_POWER, atol=1e-12)


def test_measures_subcommand(tmp_path, capsys):
    path = write(tmp_path / "poly.json", POLFULL_POWER_JSON)
    code, out, _ = run(capsys, "measures", "--in", path)
    assert code == 0
    rep = json.loads(out)
    assert 0.0 <= rep["tau1"] <= rep["tau2"] <= 1.0


def test_simulate_deterministic_csv(tmp_path, capsys):
    model = write(tmp_path / "model.json", MIX_MODEL_JSON)
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert main(["simulate", "--model", model, "--n", "50", "--seed", "3", "--out", str(out1)]) == 0
    assert main(["simulate", "--model", model, "--n", "50", "--seed", "3", "--out", str(out2)]) == 0
    text = out1.read_text()
    assert text == out2.read_text()
    lines = text.strip().splitlines()
    assert lines[0] == "u,v" and len(lines) == 51
    u, v = map(float, lines[1].split(","))
    assert 0.0 < u < 1.0 and 0.0 < v < 1.0


def test_fit_subcommands(tmp_path, capsys):
    model = write(tmp_path / "model.json", MIX_MODEL_JSON)
    data = tmp_path / "data.csv"
    assert main(["simulate", "--model", model, "--n", "120", "--seed", "5", "--out", str(data)]) == 0
    capsys.readouterr()

    code, out, _ = run(capsys, "fit", "--in", str(data), "--model", "sub", "--m", "2",
                       "--starts", "4", "--seed", "1")
    assert code == 0
    res = json.loads(out)
    assert res["model"] == "sub" and res["converged"] in (True, False)
    assert res["estimate"]["bernstein"]["degree"] == 4
    assert res["estimate"]["power"]["basis"] == "power"
    assert min(res["param"]["c"]) >= 0.0

    code, out, _ = run(capsys, "fit", "--in", str(data), "--model", "cfg", "--grid", "101")
    assert code == 0
    res = json.loads(out)
    assert len(res["estimate"]["knots"]) == 101
    assert res["param"] is None

    code, _, err = run(capsys, "fit", "--in", str(data), "--model", "full")
    assert code == 2  # --m required


def test_fit_requires_csv_header(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,y\n0.5,0.5\n")
    code, _, err = run(capsys, "fit", "--in", str(bad), "--model", "cfg")
    assert code == 1
    assert json.loads(err)["error"] == "ValueError"


def test_bound_subcommand_comonotone(tmp_path, capsys):
    model = write(tmp_path / "model.json", {"model": "comonotone"})
    code, out, _ = run(capsys, "bound", "--model", model, "--m", "4", "--t", "0.5")
    assert code == 0
    res = json.loads(out)
    assert res["error"] == pytest.approx(3.0 / 16.0, abs=1e-12)
    assert res["v_bound"] == pytest.approx(3.0 / 16.0, abs=1e-12)


def test_study_subcommand(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PICKPOLY_THREADS", "1")
    config = {
        "model": MIX_MODEL_JSON,
        "n": 40,
        "replicates": 3,
        "m": 0,
        "estimators": ["sub", "cfg"],
        "seed": 2,
        "grid": 11,
        "optim": {"starts": 2, "maxfev": 80},
    }
    path = write(tmp_path / "study.json", config)
    out_json = tmp_path / "report.json"
    out_csv = tmp_path / "curves.csv"
    code = main(["study", "--in", path, "--out", str(out_json), "--csv", str(out_csv)])
    assert code == 0
    report = json.loads(out_json.read_text())
    assert set(report["mse"].keys()) == {"sub", "cfg"}
    assert len(report["abscissae"]) == 11
    lines = out_csv.read_text().strip().splitlines()
    assert lines[0] == "t,truth,mse_sub,variance_sub,bias_sq_sub,mse_cfg,variance_cfg,bias_sq_cfg"
    assert len(lines) == 12

    # identical invocation gives byte-identical primary output
    out_json2 = tmp_path / "report2.json"
    assert main(["study", "--in", path, "--out", str(out_json2)]) == 0
    assert out_json.read_text() == out_json2.read_text()


def test_domain_error_exit_code(tmp_path, capsys):
    code, _, err = run(capsys, "validate", "--in", str(tmp_path / "missing.json"))
    assert code == 1
    assert json.loads(err)["error"] in ("FileNotFoundError", "OSError")


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_console_script_entry_point(tmp_path):
    import shutil
    import subprocess

    exe = shutil.which("pickpoly")
    if exe is None:
        pytest.skip("console script not on PATH (package not installed)")
    path = write(tmp_path / "h.json", POLFULL_H_JSON)
    proc = subprocess.run([exe, "lorentz", "--in", str(path)],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"degree": 6}
