import json

import pytest

from entrobound.harness.cli import main


@pytest.fixture
def scenario_path(tmp_path, capsys):
    path = tmp_path / "disc.json"
    assert main(["paper-regression", "--dump-scenario", str(path)]) == 0
    capsys.readouterr()
    return path


def test_paper_regression_passes(capsys):
    assert main(["paper-regression"]) == 0
    out = capsys.readouterr().out
    assert "Cor7 RHS = 0.693147" in out and "FAIL" not in out


def test_verify_json(scenario_path, capsys):
    assert main(["verify", str(scenario_path), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["format"] == "entrobound-report/1"
    assert payload["summary"]["failed"] == 0


def test_verify_negative_tolerance_fails(scenario_path, capsys):
    # demanding strictly positive slack breaks the saturated rows
    assert main(["verify", str(scenario_path), "--tolerance=-1e-3"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_bad_file_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", str(bad)]) == 2
    assert "line 1" in capsys.readouterr().err
    assert main(["verify", str(tmp_path / "missing.json")]) == 2


def test_verify_incomplete_povm_exit_two(scenario_path, capsys):
    data = json.loads(scenario_path.read_text())
    el = data["measurements"]["M"]["elements"][2]
    data["measurements"]["M"]["elements"][2] = [[[0.9 * a, 0.9 * b] for a, b in row] for row in el]
    scenario_path.write_text(json.dumps(data))
    assert main(["verify", str(scenario_path)]) == 2
    assert "CompletenessError" in capsys.readouterr().err


def test_dilate(scenario_path, capsys):
    assert main(["dilate", str(scenario_path), "--measurement", "M", "--companion", "N"]) == 0
    out = capsys.readouterr().out
    assert "enlarged dimension: 6 (from 2)" in out
    assert main(["dilate", str(scenario_path), "--measurement", "M", "--format", "json"]) == 0
    meta = json.loads(capsys.readouterr().out)["meta"]
    assert meta["enlarged_dimension"] == 6 and len(meta["projectors"]) == 3
    assert main(["dilate", str(scenario_path), "--measurement", "Q"]) == 2


def test_campaign_and_env_seed(monkeypatch, capsys):
    argv = ["campaign", "--seed", "5", "--trials", "3", "--checks", "thm5,riesz", "--format", "json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    monkeypatch.setenv("ENTROBOUND_SEED", "5")
    assert main(argv[:2] + ["99"] + argv[3:]) == 0
    assert capsys.readouterr().out == first
    monkeypatch.setenv("ENTROBOUND_SEED", "six")
    assert main(argv) == 2


def test_campaign_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 3, "trials": 2, "checks": ["cor8"], "ensemble": "PVM"}))
    assert main(["campaign", "--config", str(cfg), "--ensemble", "pure-Haar"]) == 0
    assert "Cor8" in capsys.readouterr().out
    cfg.write_text(json.dumps({"seed": "x"}))
    assert main(["campaign", "--config", str(cfg)]) == 2
    cfg.write_text(json.dumps({"bogus": 1}))
    assert main(["campaign", "--config", str(cfg)]) == 2
