import csv
import json

import pytest

from dbarg.cli import ConfigError, main, parse_config, read_config_file


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--family", "qbracket", "--q", "1.2")
    assert code == 0
    data = json.loads(out)
    assert data["info"]["spectrum"]["kind"] == "LowerBounded"
    assert data["info"]["domain"]["description"] == "whole plane"


def test_domain_descriptions(capsys):
    _, out, _ = run(capsys, "domain", "--family", "qlinear", "--a", "0.5", "--q", "0.5")
    assert json.loads(out)["info"]["domain"]["description"] == "annulus |z|^2 > 0.5"
    _, out, _ = run(capsys, "domain", "--family", "qlinear", "--lambda-plus", "-1",
                    "--const", "1", "--q", "0.5")
    assert json.loads(out)["info"]["domain"]["description"] == "disk |z|^2 < 1"
    _, out, _ = run(capsys, "domain", "--family", "poly", "--coeffs", "0,5,-1")
    assert json.loads(out)["info"]["domain"]["description"] == "empty: no coherent states"


def test_config_file_and_precedence(tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# example\n[run]\nfamily = qparen\nq = 1.5\ndim = 12\n")
    assert parse_config(str(cfg), {}, {}).dim == 12
    assert parse_config(str(cfg), {}, {"DBARG_DIM": "14"}).dim == 14
    assert parse_config(str(cfg), {"dim": 16}, {"DBARG_DIM": "14"}).dim == 16
    c = parse_config(None, {"family": "poly", "coefficients": "2, 3, 1"}, {})
    assert c.coeffs == (2.0, 3.0, 1.0)


def test_config_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("family = affine\nwidth = 3\n")
    with pytest.raises(ConfigError, match=r"bad.cfg:2: unknown key 'width'"):
        read_config_file(str(bad))
    bad.write_text("dim = three\n")
    with pytest.raises(ConfigError, match=r":1: bad value"):
        read_config_file(str(bad))
    with pytest.raises(ConfigError, match="unknown environment"):
        parse_config(None, {}, {"DBARG_COLOR": "1"})
    with pytest.raises(ConfigError, match="mu"):
        parse_config(None, {"mu": 1.5}, {})


def test_q_equal_one(capsys):
    code, _, err = run(capsys, "classify", "--family", "qbracket", "--q", "1")
    assert code == 2
    assert "q ≠ 1 required" in err


def test_equal_asymptotes(capsys):
    code, _, err = run(capsys, "domain", "--family", "qlinear", "--lambda-plus", "1",
                       "--lambda-minus", "1", "--q", "2")
    assert code == 2 and "annulus is empty" in err


def test_missing_q(capsys):
    code, _, err = run(capsys, "weight", "--family", "qparen")
    assert code == 2 and "needs q" in err


def test_verify_passes(capsys):
    code, out, err = run(capsys, "verify", "--family", "affine", "--sigma", "0")
    assert code == 0, err
    names = [c["name"] for c in json.loads(out)["checks"]]
    assert "moment[8]" in names and "identity[8]" in names


def test_verify_failure_exit(capsys):
    code, _, err = run(capsys, "verify", "--family", "qbracket", "--q", "1.2", "--tol", "1e-17")
    assert code == 1
    assert err.startswith("FAIL: ")


def test_diverging_weight(capsys):
    code, out, err = run(capsys, "weight", "--family", "explog", "--coeffs", "0,0,0,1")
    assert code == 1
    assert "FAIL: inverse Mellin infeasible: Diverging" in err
    assert json.loads(out)["info"]["feasibility"] == "Diverging"


def test_weight_csv(tmp_path, capsys):
    path = tmp_path / "w.csv"
    code, _, _ = run(capsys, "export", "--family", "affine", "--sigma", "2",
                     "--n-points", "11", "--csv", str(path))
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["x", "F"] and len(rows) == 12
    assert all(float(r[1]) >= 0 for r in rows[1:])


def test_atomic_csv(tmp_path, capsys):
    path = tmp_path / "a.csv"
    code, _, _ = run(capsys, "weight", "--family", "qlinear", "--a", "1", "--q", "2",
                     "--csv", str(path))
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["x_k", "w_k"]
    assert abs(sum(float(r[1]) for r in rows[1:]) - 1) < 1e-12


def test_kernel_csv(tmp_path, capsys):
    path = tmp_path / "k.csv"
    code, _, _ = run(capsys, "kernel", "--family", "affine", "--n-points", "5",
                     "--u-max", "3", "--csv", str(path))
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["u", "Re G", "Im G"]
    assert float(rows[-1][1]) == pytest.approx(20.085536923187668, rel=1e-14)


def test_export_needs_csv(capsys):
    code, _, err = run(capsys, "export", "--family", "affine")
    assert code == 2 and "needs --csv" in err


def test_json_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(capsys, "verify", "--family", "qparen", "--q", "1.5", "--tol", "1e-6",
                   "--out", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()
