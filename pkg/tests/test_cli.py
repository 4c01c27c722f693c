"""Tests for the command-line interface."""

import csv
import json

import pytest
from typer.testing import CliRunner

from affineam import __version__
from affineam.config import ExperimentConfig
from affineam.formats import dump_spec
from affineam.main import EXIT_ERROR, app

from tests.conftest import counter_spec

runner = CliRunner()


def test_version():
    result = runner.invoke(app, ["version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_catalog_lists_protocols_and_machines():
    result = runner.invoke(app, ["catalog"])
    assert result.exit_code == 0
    for name in ("middle", "mpal", "kg", "equal-blocks", "palindromes"):
        assert name in result.output


def test_run_middle(tmp_path):
    result = runner.invoke(app, ["run", "-p", "middle", "-n", "3", "-o", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "[PASS]" in result.output

    with open(tmp_path / "report.csv", newline="") as f:
        rows = list(csv.DictReader(f))
    assert [row["word"] for row in rows][:4] == ["", "0", "1", "00"]
    for row in rows:
        if row["member"] == "True":
            assert row["p_accept"] == "1/1"
            assert row["bound"] == "= 1"
        assert row["satisfied"] == "True"

    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["protocol"] == "middle"
    assert summary["epsilon"] == "1/3"
    assert summary["violations"] == 0
    assert summary["total"] == len(rows)


def test_run_is_deterministic(tmp_path):
    args = ["run", "-p", "mpal", "-i", "a$b", "-i", "a$a", "-m", "worst", "-o", str(tmp_path)]
    assert runner.invoke(app, args).exit_code == 0
    first = (tmp_path / "report.csv").read_bytes(), (tmp_path / "summary.json").read_bytes()
    assert runner.invoke(app, args).exit_code == 0
    second = (tmp_path / "report.csv").read_bytes(), (tmp_path / "summary.json").read_bytes()
    assert first == second
    assert b"2/33" in first[0]


def test_run_from_config_file(tmp_path):
    config = ExperimentConfig.from_dict(
        {"protocol": {"name": "kg"}, "inputs": {"words": ["0", "1A0,0E1,1"]}, "mode": "rounds"}
    )
    path = tmp_path / "experiment.json"
    config.save_to_file(path)
    out = tmp_path / "out"
    result = runner.invoke(app, ["run", "-c", str(path), "-o", str(out)])
    assert result.exit_code == 0, result.output
    summary = json.loads((out / "summary.json").read_text())
    assert [row["overall_accept"] for row in summary["rows"]] == ["1/1", "1/1"]


def test_run_monte_carlo(tmp_path):
    result = runner.invoke(
        app,
        ["run", "-p", "middle", "-i", "010", "-m", "mc", "--trials", "200", "-o", str(tmp_path)],
    )
    assert result.exit_code == 0, result.output
    with open(tmp_path / "report.csv", newline="") as f:
        (row,) = list(csv.DictReader(f))
    assert row["p_accept"] == "1/1"
    assert row["note"] == "200 trials, seed 0"


@pytest.mark.parametrize(
    "args",
    [
        ["run", "-p", "middle", "-e", "2/3"],
        ["run", "-p", "nope"],
        ["run", "-p", "weak-tm", "--machine", "no-such-machine", "-i", "01"],
        ["run", "-c", "missing.json"],
    ],
)
def test_run_usage_errors(args, tmp_path):
    result = runner.invoke(app, [*args, "-o", str(tmp_path)])
    assert result.exit_code == EXIT_ERROR
    assert "Error" in result.output


def test_inspect_protocol():
    result = runner.invoke(app, ["inspect", "middle"])
    assert result.exit_code == 0, result.output
    assert "M_F" in result.output
    assert "A^-1" in result.output
    assert "well formed" in result.output


def test_inspect_knapsack_shows_delta():
    result = runner.invoke(app, ["inspect", "kg", "--no-matrices"])
    assert result.exit_code == 0, result.output
    assert "work" in result.output


def test_inspect_dump(tmp_path):
    path = tmp_path / "middle.json"
    result = runner.invoke(app, ["inspect", "middle", "--no-matrices", "-d", str(path)])
    assert result.exit_code == 0
    assert json.loads(path.read_text())["name"] == "middle"


def test_inspect_bad_spec_file(tmp_path):
    text = dump_spec(counter_spec()).replace('"-1/1"', '"-9/10"', 1)
    path = tmp_path / "bad.json"
    path.write_text(text)
    result = runner.invoke(app, ["inspect", str(path)])
    assert result.exit_code == EXIT_ERROR
    assert "column-sum" in result.output


def test_inspect_unparsable_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{")
    result = runner.invoke(app, ["inspect", str(path)])
    assert result.exit_code == EXIT_ERROR


def test_trace_honest_run():
    result = runner.invoke(app, ["trace", "middle", "010", "--seed", "3"])
    assert result.exit_code == 0, result.output
    assert "Outcome: accept" in result.output
