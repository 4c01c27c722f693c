"""Tests for the experiment runner and report writer."""

import csv
from fractions import Fraction

from rich.console import Console

from affineam.config import ExperimentConfig
from affineam.report import CSV_COLUMNS, ReportWriter
from affineam.runner import EvaluationRow, ExperimentRunner


def make_runner(tmp_path, **data) -> ExperimentRunner:
    data.setdefault("report", {"output_path": str(tmp_path)})
    return ExperimentRunner(ExperimentConfig.from_dict(data))


def test_inputs_are_sorted_and_unique(tmp_path):
    runner = make_runner(tmp_path, inputs={"words": ["11", "0"], "all_up_to": 1})
    assert runner.inputs() == ["", "0", "1", "11"]


def test_exact_rows_check_bounds(tmp_path):
    runner = make_runner(tmp_path, inputs={"words": ["010", "10"]})
    member, non_member = runner.evaluate("010"), runner.evaluate("10")
    assert member.member and member.p_accept == 1
    assert member.bound == "= 1" and member.satisfied
    assert not non_member.member
    assert non_member.bound == "<= 1/3" and non_member.satisfied


def test_worst_mode_uses_cheating_prover(tmp_path):
    runner = make_runner(tmp_path, inputs={"words": ["10"]}, mode="worst")
    row = runner.evaluate("10")
    assert row.p_accept == Fraction(1, 3)
    assert row.satisfied


def test_rounds_mode_reports_overall_acceptance(tmp_path):
    runner = make_runner(
        tmp_path, protocol={"name": "kg"}, inputs={"words": ["1"]}, mode="rounds"
    )
    row = runner.evaluate("1")
    assert row.overall_accept == 0
    assert row.satisfied


def test_node_cap_is_reported_not_judged(tmp_path):
    runner = make_runner(
        tmp_path,
        protocol={"name": "mpal"},
        inputs={"words": ["ab$ba"]},
        mode="worst",
        engine={"node_cap": 3},
    )
    row = runner.evaluate("ab$ba")
    assert row.satisfied is None
    assert row.note == "node cap exceeded (3)"


def test_violations_are_counted(tmp_path):
    runner = make_runner(tmp_path, inputs={"words": ["1"]})
    result = runner.run()
    result.rows.append(EvaluationRow("x", False, p_accept=Fraction(1, 2), satisfied=False))
    assert result.members == 1
    assert len(result.violations) == 1


def test_trace_is_reproducible(tmp_path):
    runner = make_runner(tmp_path, protocol={"name": "kg"}, inputs={"words": ["1A0,0E1,1"]})
    first = runner.trace("1A0,0E1,1", seed=7)
    second = runner.trace("1A0,0E1,1", seed=7)
    assert first.outcome == second.outcome
    assert list(first.transcript) == list(second.transcript)


def test_report_files(tmp_path):
    runner = make_runner(tmp_path, inputs={"all_up_to": 2})
    result = runner.run()
    writer = ReportWriter(runner.config.report)
    csv_path, json_path = writer.write(result)
    lines = csv_path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + 7
    summary = writer.summary(result)
    assert summary.parameters["delta"] == "1/1"
    assert "layout" not in summary.parameters
    assert json_path.read_text().endswith("\n")


def test_render(tmp_path):
    runner = make_runner(tmp_path, inputs={"words": ["010"]})
    console = Console(record=True, width=120)
    ReportWriter(runner.config.report).render(runner.run(), console)
    text = console.export_text()
    assert "010" in text
    assert "[PASS]" in text


def test_sampled_rows_carry_step_statistics(tmp_path):
    runner = make_runner(
        tmp_path, inputs={"words": ["010"]}, mode="mc", sampling={"trials": 200, "seed": 3}
    )
    row = runner.evaluate("010")
    assert row.p_accept == 1
    assert row.samples == 200
    assert row.variance_steps is not None and row.variance_steps >= 0
    assert row.bound == "= 1 (3 sigma)"
    assert row.satisfied


def test_sampled_frequency_is_judged_within_three_sigma(tmp_path):
    runner = make_runner(tmp_path, inputs={"words": ["10"]})
    noisy = EvaluationRow("10", False, p_accept=Fraction(36, 100), samples=100)
    judged = runner._check(noisy)
    assert judged.bound == "<= 1/3 (3 sigma)"
    assert judged.satisfied
    exact = runner._check(EvaluationRow("10", False, p_accept=Fraction(36, 100)))
    assert exact.bound == "<= 1/3" and not exact.satisfied
    far = runner._check(EvaluationRow("10", False, p_accept=Fraction(3, 5), samples=1000))
    assert not far.satisfied


def test_sampled_member_below_threshold_within_three_sigma(tmp_path):
    runner = make_runner(tmp_path, inputs={"words": ["010"]})
    row = runner._check(EvaluationRow("010", True, p_accept=Fraction(64, 100), samples=100))
    assert row.bound == ">= 2/3 (3 sigma)"
    assert row.satisfied


def test_report_csv_decimal_and_interval_columns(tmp_path):
    runner = make_runner(
        tmp_path, inputs={"words": ["010", "10"]}, mode="mc", sampling={"trials": 100}
    )
    writer = ReportWriter(runner.config.report)
    writer.write(runner.run())
    with open(tmp_path / "report.csv", newline="") as f:
        rows = {row["word"]: row for row in csv.DictReader(f)}
    member = rows["010"]
    assert member["p_reject_decimal"] == "0.000000"
    assert member["p_restart_decimal"] == "0.000000"
    assert member["p_unresolved_decimal"] == "0.000000"
    assert member["ci_low"] == member["ci_high"] == "1.000000"
    assert member["variance_steps"] != ""
    non_member = rows["10"]
    assert float(non_member["ci_low"]) <= float(non_member["p_accept_decimal"])
    assert float(non_member["p_accept_decimal"]) <= float(non_member["ci_high"])


def test_exact_rows_leave_sampling_columns_empty(tmp_path):
    runner = make_runner(tmp_path, inputs={"words": ["010"]})
    writer = ReportWriter(runner.config.report)
    writer.write(runner.run())
    with open(tmp_path / "report.csv", newline="") as f:
        (row,) = list(csv.DictReader(f))
    assert row["variance_steps"] == row["ci_low"] == row["ci_high"] == ""
    assert row["bound"] == "= 1"
