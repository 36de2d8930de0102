import json

import pytest

from imperfect_strip.cli import EXIT_CONFIG, EXIT_OK, EXIT_VERIFY, build_parser, main

SMALL_SWEEP = {"strip": {"dimensionless": {"h_star": 0, "mu_star": 0, "kappa_star": 1}},
               "sweep": {"kappa_stars": [1.0], "n_mu": 3, "n_h": 2}}


def _write(tmp_path, data, name="c.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def test_constants_json(capsys):
    assert main(["constants"]) == EXIT_OK
    rec = json.loads(capsys.readouterr().out)
    assert rec["kappa_star"] == 1.0
    assert rec["junction_det"] < 0
    assert "junction_opening_to_jump" in rec


def test_constants_al_fe(tmp_path, capsys):
    cfg = _write(tmp_path, {"strip": {"physical": {"mu1": 26e9, "mu2": 82e9, "h1": 0.1,
                                                   "h2": 0.05, "kappa": 0.01 / 2.5e9}}})
    assert main(["constants", "--config", cfg]) == EXIT_OK
    rec = json.loads(capsys.readouterr().out)
    assert rec["kappa_star"] == pytest.approx(2.88, rel=5e-4)
    assert rec["gamma_minus"] == pytest.approx(31.4159, rel=1e-5)


def test_constants_symmetric_kappa8(tmp_path, capsys):
    cfg = _write(tmp_path, {"strip": {"dimensionless": {"h_star": 0, "mu_star": 0, "kappa_star": 8}}})
    main(["constants", "--config", cfg, "--format", "csv"])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("# imperfect_strip")
    row = dict(zip(lines[2].split(","), lines[3].split(",")))
    assert float(row["lambda_star"]) == pytest.approx(1.0, rel=1e-14)


def test_kappa_zero_is_validation_error(tmp_path, capsys):
    cfg = _write(tmp_path, {"strip": {"dimensionless": {"h_star": 0, "mu_star": 0, "kappa_star": 0}}})
    for cmd in ("constants", "field", "verify", "factorize"):
        assert main([cmd, "--config", cfg]) == EXIT_CONFIG
    assert "perfect interface" in capsys.readouterr().err


def test_schema_error_names_field(tmp_path, capsys):
    cfg = _write(tmp_path, {"strip": {"dimensionless": {"h_star": 1.5, "mu_star": 0, "kappa_star": 1}}})
    assert main(["constants", "--config", cfg]) == EXIT_CONFIG
    assert "strip.dimensionless.h_star" in capsys.readouterr().err


def test_bad_tol_and_threads(capsys):
    assert main(["constants", "--tol", "2"]) == EXIT_CONFIG
    assert main(["sweep", "--threads", "0"]) == EXIT_CONFIG


def test_numeric_failure_exit_code(monkeypatch, capsys):
    from imperfect_strip import cli
    from imperfect_strip.errors import QuadratureError

    def boom(run):
        raise QuadratureError("did not converge")
    monkeypatch.setitem(cli.HANDLERS, "constants", boom)
    assert main(["constants"]) == 2


def test_sweep_csv_byte_identical(tmp_path):
    cfg = _write(tmp_path, SMALL_SWEEP)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", "--config", cfg, "--out", str(a)]) == EXIT_OK
    assert main(["sweep", "--config", cfg, "--out", str(b), "--threads", "2"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().count("\n") == 3 + 6


def test_sweep_json(tmp_path, capsys):
    cfg = _write(tmp_path, SMALL_SWEEP)
    assert main(["sweep", "--config", cfg, "--format", "json"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 6 and rows[0]["kappa_star"] == 1.0


def test_factorize_outputs(capsys):
    assert main(["factorize"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["diagnostics"]["identity_error"] < 1e-8
    assert main(["factorize", "--format", "csv"]) == EXIT_OK
    lines = [ln for ln in capsys.readouterr().out.splitlines() if not ln.startswith("#")]
    assert lines[0] == "xi,re_plus,im_plus,abs2_plus,xi_star"
    for ln in lines[1:]:
        _, re, im, a2, ref = map(float, ln.split(","))
        assert a2 == pytest.approx(ref, rel=1e-8)


def test_field_outputs(tmp_path, capsys):
    data = dict(SMALL_SWEEP, field={"points": [[-1.0, 0.25], [1.0, 0.25]]})
    cfg = _write(tmp_path, data)
    out = tmp_path / "f.csv"
    assert main(["field", "--config", cfg, "--format", "csv", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[2] == "# component 1 quantity value"
    assert lines[3] == "X,Y,value,error"
    assert len(lines) == 6
    assert main(["field", "--config", cfg, "--format", "json"]) == EXIT_OK
    js = json.loads(capsys.readouterr().out)
    assert js["value"][0] == pytest.approx(2.0 * -1.0 - 0.8728318544, rel=1e-6)


def test_verify_pass_and_fail(tmp_path, capsys):
    ok = _write(tmp_path, dict(SMALL_SWEEP, verify={"n_configs": 2, "n_points": 10}), "ok.json")
    assert main(["verify", "--config", ok]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["passed"] is True
    bad = _write(tmp_path, dict(SMALL_SWEEP, verify={"n_configs": 2, "n_points": 10,
                                                     "lambda_factor": 1.01}), "bad.json")
    out = tmp_path / "report.json"
    assert main(["verify", "--config", bad, "--out", str(out)]) == EXIT_VERIFY
    rep = json.loads(out.read_text())
    failed = {c["name"] for c in rep["checks"] if not c["passed"]}
    assert {"D_coefficients", "lambda_identity", "a0_equals_lambda"} <= failed


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
