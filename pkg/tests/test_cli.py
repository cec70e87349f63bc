"""Command-line interface behavior and exit codes."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from mbdecide.cli import main

FIXTURE = Path(__file__).parent / "fixtures" / "block_training.csv"


def test_decide_fixture(capsys):
    code = main(["decide", str(FIXTURE), "--normalize-sme"])
    assert code == 0
    out = capsys.readouterr().out
    assert "bench_press" in out
    assert "likely positive" in out
    assert "unclear" in out


def test_decide_strong_positive(tmp_path, capsys):
    csv = tmp_path / "one.csv"
    csv.write_text("id,effect,se,df\nbig,2.0,0.2,18\n")
    assert main(["decide", str(csv)]) == 0
    assert "most likely positive" in capsys.readouterr().out


def test_decide_empty_table(tmp_path, capsys):
    csv = tmp_path / "empty.csv"
    csv.write_text("id,effect,se,df\n")
    assert main(["decide", str(csv)]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 1  # header only


def test_decide_malformed_csv_exit_2(tmp_path, capsys):
    csv = tmp_path / "bad.csv"
    csv.write_text("id,effect,se,df\na,0.1,0,18\n")
    assert main(["decide", str(csv)]) == 2
    assert "row 2: se must be positive" in capsys.readouterr().err


def test_decide_missing_file_exit_2(tmp_path, capsys):
    assert main(["decide", str(tmp_path / "nope.csv")]) == 2
    assert "error:" in capsys.readouterr().err


def test_decide_json_output(tmp_path, capsys):
    out = tmp_path / "decisions.json"
    assert main(["decide", str(FIXTURE), "--normalize-sme", "--json", str(out)]) == 0
    capsys.readouterr()
    doc = json.loads(out.read_text())
    assert len(doc["decisions"]) == 7


def test_config_env_fallback(tmp_path, capsys, monkeypatch):
    config = tmp_path / "clinical.json"
    config.write_text('{"variant": "clinical", "theta1": -1.0, "theta2": 1.0}')
    monkeypatch.setenv("MBD_CONFIG", str(config))
    csv = tmp_path / "one.csv"
    csv.write_text("id,effect,se,df\nx,1.6,0.45,22\n")
    assert main(["decide", str(csv)]) == 0
    assert "consider using" in capsys.readouterr().out


def test_bad_config_exit_2(tmp_path, capsys):
    config = tmp_path / "bad.json"
    config.write_text('{"alphas": [0.05, 0.25]}')
    csv = tmp_path / "one.csv"
    csv.write_text("id,effect,se,df\nx,0.1,0.2,18\n")
    assert main(["decide", str(csv), "--config", str(config)]) == 2
    assert "strictly decreasing" in capsys.readouterr().err


@pytest.mark.parametrize("kind", ["funnel", "enhanced", "mbd"])
def test_plot_deterministic(tmp_path, capsys, kind):
    out1 = tmp_path / "a.svg"
    out2 = tmp_path / "b.svg"
    args = ["plot", str(FIXTURE), "--kind", kind, "--normalize-sme", "--df", "22"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    assert out1.read_bytes().startswith(b"<svg")


def test_error_scan_with_cap(capsys):
    code = main(
        [
            "error",
            "--true-effect",
            "0",
            "--df",
            "18",
            "--se-grid",
            "0.01:2.0:40",
            "--substantive",
            "likely-positive+",
            "--cap",
            "0.125",
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "max rate" in out
    assert "PASS" in out


def test_error_mc_reproducible(capsys):
    args = [
        "error",
        "--df",
        "18",
        "--se-grid",
        "0.05:0.5:5",
        "--mc",
        "5000",
        "--seed",
        "7",
    ]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    assert "mc_rate" in first


def test_error_bad_grid_exit_2(capsys):
    assert main(["error", "--se-grid", "5:1:10"]) == 2
    assert "se grid" in capsys.readouterr().err


def test_cli_decide_equals_service_decide(tmp_path, capsys):
    from fastapi.testclient import TestClient

    from mbdecide.service import create_app

    csv = tmp_path / "rows.csv"
    csv.write_text(
        "id,effect,se,df\nalpha,0.31,0.18,14\nbeta,-0.45,0.22,30\ngamma,0.02,0.9,18\n"
    )
    out = tmp_path / "cli.json"
    assert main(["decide", str(csv), "--json", str(out)]) == 0
    capsys.readouterr()
    cli_decisions = json.loads(out.read_text())["decisions"]

    client = TestClient(create_app())
    rows = [
        {"id": "alpha", "effect": 0.31, "se": 0.18, "df": 14},
        {"id": "beta", "effect": -0.45, "se": 0.22, "df": 30},
        {"id": "gamma", "effect": 0.02, "se": 0.9, "df": 18},
    ]
    service_decisions = client.post("/v1/decide", json={"rows": rows}).json()["decisions"]
    assert cli_decisions == service_decisions
