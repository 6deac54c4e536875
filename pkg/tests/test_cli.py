import json

import pytest

from dualmle.cli import main
from dualmle.modelfile import parse_model_file


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_zoo_list_and_show(capsys):
    code, out, _ = run(capsys, "zoo", "list")
    assert code == 0 and len(out.strip().splitlines()) >= 12
    code, out, _ = run(capsys, "zoo", "show", "I5")
    assert code == 0 and parse_model_file(out).id == "I5"
    code, _, err = run(capsys, "zoo", "show", "I9")
    assert code == 1 and "I9" in err


def test_dualize_conic(capsys, tmp_path):
    out_file = tmp_path / "d.json"
    code, out, err = run(capsys, "dualize", "zoo/conic", "-o", str(out_file))
    assert code == 0
    mf = parse_model_file(out)
    assert mf.generators == ["q0*q2 - q1^2"] and mf.role == "dual"
    assert out_file.read_text() == out
    assert "degree 2" in err


def test_dualize_hyperplane(capsys, tmp_path):
    path = tmp_path / "h.json"
    path.write_text(json.dumps({"format_version": 1, "id": "h", "role": "primal",
                                "variables": ["p0", "p1", "p2"], "generators": ["p0 + p1 + p2"]}))
    code, out, _ = run(capsys, "dualize", str(path))
    mf = parse_model_file(out)
    assert code == 0 and mf.codim == 2 and len(mf.generators) == 2


def test_dualize_needs_primal(capsys):
    code, _, err = run(capsys, "dualize", "zoo/conic-dual")
    assert code == 1 and "primal" in err


def test_ml_degree_commands(capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, out, _ = run(capsys, "ml-degree", "zoo/conic-dual", "--method", "lagrange", "--report", str(rep))
    assert code == 0 and json.loads(out)["ml_degree"] == 1
    assert json.loads(rep.read_text())["formulation"] == "lagrange"
    code, out, _ = run(capsys, "ml-degree", "zoo/I2", "--method", "dual")
    data = json.loads(out)
    assert code == 0 and data["ml_degree"] == 4 and data["certified"] and len(data["data"]) == 2


def test_ml_degree_role_mismatch(capsys):
    code, _, err = run(capsys, "ml-degree", "zoo/conic", "--method", "dual")
    assert code == 1 and "needs a dual model" in err


def test_critical_points_conic(capsys):
    code, out, _ = run(capsys, "critical-points", "zoo/conic", "--data", "1,2,3")
    rep = json.loads(out)
    assert code == 0 and rep["ml_degree"] == 1
    p = rep["mle"]["p"]
    assert p["p0"] == pytest.approx(1 / 9, abs=1e-10)
    assert p["p1"] == pytest.approx(4 / 9, abs=1e-10)
    assert p["p2"] == pytest.approx(4 / 9, abs=1e-10)


def test_critical_points_bad_data(capsys):
    assert run(capsys, "critical-points", "zoo/conic", "--data", "1,0,1")[0] == 2
    assert run(capsys, "critical-points", "zoo/conic", "--data", "1,2")[0] == 2
    assert run(capsys, "critical-points", "zoo/conic", "--data", "1,x,2")[0] == 2


def test_critical_points_needs_data(capsys):
    code, _, err = run(capsys, "critical-points", "zoo/conic")
    assert code == 1 and "--data" in err


def test_report_is_reproducible(capsys):
    argv = ("critical-points", "zoo/conic-dual", "--data", "3,5,7", "--seed", "2", "--exact-eliminants")
    a = json.loads(run(capsys, *argv)[1])
    b = json.loads(run(capsys, *argv)[1])
    for key in ("model", "formulation", "seed", "data", "ml_degree", "eliminants", "points", "mle"):
        assert a[key] == b[key]
    assert list(a) == list(b)


def test_bench_usage_errors(capsys):
    assert run(capsys, "bench", "--suite", "")[0] == 1
    assert run(capsys, "bench", "--suite", "nosuch")[0] == 1


def test_usage_errors(capsys):
    assert run(capsys)[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "ml-degree", "zoo/nosuch")[0] == 1


def test_resource_limit_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("DUALMLE_MAX_BASIS", "2")
    code, _, err = run(capsys, "ml-degree", "zoo/I2", "--method", "dual")
    assert code == 3
