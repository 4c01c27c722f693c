"""
Report writer: report.csv, summary.json and a console table.

Files carry exact "p/q" strings plus decimal columns for reading, and no
timestamps, so two runs of the same configuration produce identical files.
"""

import csv
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from rich.console import Console
from rich.table import Table

from affineam.algebra.rational import format_rational, to_decimal
from affineam.config import ReportConfig
from affineam.engine import sigma_interval
from affineam.formats import EvalReportModel, ReportRowModel
from affineam.runner import EvaluationRow, ExperimentResult

logger = logging.getLogger(__name__)

SCALARS = (Fraction, int, str, tuple, list)

CSV_COLUMNS = (
    "word",
    "member",
    "p_accept",
    "p_accept_decimal",
    "p_reject",
    "p_reject_decimal",
    "p_restart",
    "p_restart_decimal",
    "p_unresolved",
    "p_unresolved_decimal",
    "overall_accept",
    "expected_steps",
    "variance_steps",
    "ci_low",
    "ci_high",
    "bound",
    "satisfied",
    "nodes",
    "note",
)


def _text(value: Any) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (tuple, list)):
        return ", ".join(_text(item) for item in value)
    return str(value)


def _interval(row: EvaluationRow, places: int) -> tuple[str, str]:
    if row.samples is None:
        return "", ""
    value = row.overall_accept if row.overall_accept is not None else row.p_accept
    low, high = sigma_interval(value, row.samples)
    return f"{low:.{places}f}", f"{high:.{places}f}"


def _status(satisfied: Optional[bool]) -> str:
    if satisfied is None:
        return "[yellow][SKIP][/]"
    return "[green][PASS][/]" if satisfied else "[red][FAIL][/]"


class ReportWriter:
    """Writes and renders the rows of one experiment."""

    def __init__(self, config: ReportConfig):
        self.config = config

    def row_model(self, row: EvaluationRow) -> ReportRowModel:
        return ReportRowModel(
            word=row.word,
            member=row.member,
            p_accept=format_rational(row.p_accept),
            p_reject=format_rational(row.p_reject),
            p_restart=format_rational(row.p_restart),
            p_unresolved=format_rational(row.p_unresolved),
            overall_accept=(
                format_rational(row.overall_accept) if row.overall_accept is not None else None
            ),
            expected_steps=format_rational(row.expected_steps),
            bound=row.bound,
            satisfied=row.satisfied,
            nodes=row.nodes,
            note=row.note,
            variance_steps=(
                format_rational(row.variance_steps) if row.variance_steps is not None else None
            ),
            samples=row.samples,
        )

    def summary(self, result: ExperimentResult) -> EvalReportModel:
        bundle = result.bundle
        return EvalReportModel(
            config=result.config.model_dump(mode="json"),
            protocol=bundle.name,
            epsilon=format_rational(bundle.epsilon),
            parameters={
                key: _text(value)
                for key, value in sorted(bundle.parameters.items())
                if isinstance(value, SCALARS)
            },
            notes=list(bundle.notes),
            total=len(result.rows),
            members=result.members,
            violations=len(result.violations),
            rows=[self.row_model(row) for row in result.rows],
        )

    def write(self, result: ExperimentResult) -> list[Path]:
        """
        Write the enabled report files.

        Returns:
            Paths written, CSV first
        """
        out = self.config.output_path
        out.mkdir(parents=True, exist_ok=True)
        written = []
        if self.config.write_csv:
            written.append(self.write_csv(result, out / "report.csv"))
        if self.config.write_json:
            path = out / "summary.json"
            path.write_text(self.summary(result).model_dump_json(indent=2) + "\n")
            written.append(path)
        for path in written:
            logger.info("wrote %s", path)
        return written

    def write_csv(self, result: ExperimentResult, path: Path) -> Path:
        places = self.config.decimal_places
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in result.rows:
                model = self.row_model(row)
                low, high = _interval(row, places)
                writer.writerow(
                    [
                        model.word,
                        model.member,
                        model.p_accept,
                        to_decimal(row.p_accept, places),
                        model.p_reject,
                        to_decimal(row.p_reject, places),
                        model.p_restart,
                        to_decimal(row.p_restart, places),
                        model.p_unresolved,
                        to_decimal(row.p_unresolved, places),
                        model.overall_accept or "",
                        model.expected_steps,
                        model.variance_steps or "",
                        low,
                        high,
                        model.bound,
                        "" if model.satisfied is None else model.satisfied,
                        model.nodes,
                        model.note,
                    ]
                )
        return path

    def render(self, result: ExperimentResult, console: Console) -> None:
        places = self.config.decimal_places
        table = Table(title=f"{result.bundle.name} (epsilon = {result.bundle.epsilon})")
        table.add_column("Input")
        table.add_column("Member")
        table.add_column("Accept", justify="right")
        table.add_column("Reject", justify="right")
        table.add_column("Restart", justify="right")
        table.add_column("Open", justify="right")
        table.add_column("Overall", justify="right")
        table.add_column("Bound")
        table.add_column("Status")
        for row in result.rows:
            overall = row.overall_accept
            table.add_row(
                row.word or "ε",
                "yes" if row.member else "no",
                to_decimal(row.p_accept, places),
                to_decimal(row.p_reject, places),
                to_decimal(row.p_restart, places),
                to_decimal(row.p_unresolved, places),
                to_decimal(overall, places) if overall is not None else "-",
                row.bound or row.note,
                _status(row.satisfied),
            )
        console.print(table)
