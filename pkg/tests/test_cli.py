from __future__ import annotations

import json
import subprocess
import sys

import pytest

from solvlck.cli import cmd_betti, field_data_path, main
from solvlck.lck import INCONCLUSIVE, NO_VAISMAN


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


@pytest.mark.parametrize("name,dims", [("heisenberg.json", [1, 2, 2, 1]), ("abelian4.json", [1, 4, 6, 4, 1])])
def test_betti(data_dir, capsys, name, dims):
    code, rep, _ = run(["betti", data_dir / name], capsys)
    assert code == 0 and rep["dims"] == dims and rep["kind"] == "cohomology_report"
    assert rep["config"]["backend"] == "rational"


def test_betti_float_backend(data_dir, capsys):
    code, rep, _ = run(["betti", data_dir / "heisenberg.json", "--backend", "float"], capsys)
    assert code == 0 and rep["dims"] == [1, 2, 2, 1] and rep["config"]["backend"] == "float"


def test_malformed_spec(data_dir, capsys):
    code, _, err = run(["betti", data_dir / "malformed.json"], capsys)
    diag = json.loads(err)
    assert code == 2
    assert diag["message"] == "brackets: antisymmetry violated at (1,2)"
    assert diag["error"] == "AntisymmetryViolation"


@pytest.mark.parametrize("content", ["{not json", json.dumps({"kind": "form", "grade": 1, "terms": []}),
                                     json.dumps({"kind": "lie_algebra", "dim": 2, "brackets": [{"i": 0}]})])
def test_invalid_inputs_exit_2(tmp_path, capsys, content):
    p = tmp_path / "bad.json"
    p.write_text(content)
    code, _, err = run(["betti", p], capsys)
    assert code == 2 and json.loads(err)["exit_code"] == 2


def test_missing_file(tmp_path, capsys):
    assert run(["betti", tmp_path / "nope.json"], capsys)[0] == 2


@pytest.mark.parametrize("theta,dims", [("theta_x.json", [0] * 5), ("theta_zero.json", [1, 3, 4, 3, 1])])
def test_twisted(data_dir, capsys, theta, dims):
    code, rep, _ = run(["twisted", data_dir / "heisenberg_r.json", data_dir / theta], capsys)
    assert code == 0 and rep["dims"] == dims


def test_twisted_zero_equals_betti(data_dir, capsys):
    _, tw, _ = run(["twisted", data_dir / "heisenberg_r.json", data_dir / "theta_zero.json"], capsys)
    _, bt, _ = run(["betti", data_dir / "heisenberg_r.json"], capsys)
    assert tw["dims"] == bt["dims"]


def test_twisted_non_closed(data_dir, capsys):
    code, _, err = run(["twisted", data_dir / "heisenberg_r.json", data_dir / "theta_z.json"], capsys)
    assert code == 3 and json.loads(err)["error"] == "ThetaNotClosed"


@pytest.mark.parametrize("args,verdict", [
    (["ot21.json", "ot21_omega.json", "ot21_theta.json"], NO_VAISMAN),
    (["ot21.json"], NO_VAISMAN),
    (["inoue_s0.json"], NO_VAISMAN),
    (["aff2.json"], INCONCLUSIVE),
])
def test_check_vaisman(data_dir, capsys, args, verdict):
    code, rep, _ = run(["check-vaisman"] + [data_dir / a for a in args], capsys)
    assert code == 0 and rep["verdict"] == verdict and rep["checks_agree"]


def test_check_vaisman_needs_split(data_dir, capsys):
    assert run(["check-vaisman", data_dir / "heisenberg.json"], capsys)[0] == 2


def test_build_ot_to_files(data_dir, tmp_path, capsys):
    out = tmp_path / "inoue.json"
    code, rep, err = run(["build-ot", data_dir / "plastic.json", "--out", out], capsys)
    assert code == 0 and rep is None and "b =" in err
    spec = json.loads(out.read_text())
    fd = json.loads((tmp_path / "inoue.field.json").read_text())
    assert spec["kind"] == "lie_algebra" and fd["kind"] == "ot_field_data"
    assert abs(float(fd["b"][0][0]) + 1) < 1e-9
    assert spec["basis"] == ["alpha1", "beta1", "gamma1", "gamma2"]
    code, cert, _ = run(["check-vaisman", out], capsys)
    assert code == 0 and cert["verdict"] == NO_VAISMAN
    assert run(["betti", out, "--quiet"], capsys)[1]["dims"] == [1, 1, 0, 1, 1]


def test_build_ot_stdout_envelope(data_dir, capsys):
    code, rep, _ = run(["build-ot", data_dir / "quartic.json"], capsys)
    assert code == 0 and rep["kind"] == "ot_build"
    assert [float(x[0]) for x in rep["field_data"]["b"]] == pytest.approx([-1, -1], abs=1e-9)


@pytest.mark.parametrize("name,code", [("signature_mismatch.json", 3), ("plastic_bound0.json", 4)])
def test_build_ot_failures(data_dir, capsys, name, code):
    got, _, err = run(["build-ot", data_dir / name], capsys)
    assert got == code and json.loads(err)["exit_code"] == code


def test_build_ot_rejects_rational(data_dir, capsys):
    assert run(["build-ot", data_dir / "plastic.json", "--backend", "rational"], capsys)[0] == 2


def test_formality_ot21(data_dir, capsys):
    code, rep, _ = run(["formality", data_dir / "ot21.json", data_dir / "ot21_metric.json"], capsys)
    assert code == 0 and rep["formal"] and rep["harmonic_dims"] == [1, 2, 1, 0, 1, 2, 1]
    _, derived, _ = run(["formality", data_dir / "ot21.json"], capsys)
    assert derived["harmonic"] == rep["harmonic"]


def test_formality_heisenberg(data_dir, capsys):
    code, rep, _ = run(["formality", data_dir / "heisenberg.json", data_dir / "identity3.json"], capsys)
    x, y = rep["failing_pair"]
    assert code == 0 and rep["formal"] is False
    assert x["terms"] == [{"indices": [0], "coeff": "1"}] and y["terms"] == [{"indices": [1], "coeff": "1"}]


def test_formality_abelian(data_dir, capsys):
    assert run(["formality", data_dir / "abelian4.json", data_dir / "identity4.json"], capsys)[1]["formal"]


def test_reports_are_byte_identical(data_dir, tmp_path, capsys):
    out = tmp_path / "r.json"
    blobs = []
    for _ in range(2):
        assert main(["formality", str(data_dir / "ot21.json"), str(data_dir / "ot21_metric.json"),
                     "--out", str(out), "--quiet"]) == 0
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]
    assert capsys.readouterr().err == ""
    assert not [p for p in tmp_path.iterdir() if p.name.startswith(".tmp-")]


def test_tolerance_sources(data_dir, monkeypatch):
    monkeypatch.setenv("SOLV_LCK_TOL", "1e-7")
    assert cmd_betti(str(data_dir / "heisenberg.json"))["config"]["tol"] == 1e-7
    assert cmd_betti(str(data_dir / "heisenberg.json"), tol=1e-5)["config"]["tol"] == 1e-5


@pytest.mark.parametrize("tol", ["-1", "0"])
def test_nonpositive_tolerance(data_dir, capsys, tol):
    assert run(["betti", data_dir / "heisenberg.json", "--tol", tol], capsys)[0] == 2


def test_field_data_path():
    assert field_data_path("a/b.json") == "a/b.field.json"
    assert field_data_path("spec") == "spec.field.json"


def test_module_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "solvlck", "betti", str(data_dir / "heisenberg.json"), "--quiet"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["dims"] == [1, 2, 2, 1]
