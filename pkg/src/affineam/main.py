"""
AffineAM CLI - Main entry point.

Command-line interface for building, inspecting and evaluating affine
verifiers.
"""

import logging
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.panel import Panel
from rich.progress import (
    BarColumn,
    Progress,
    SpinnerColumn,
    TaskProgressColumn,
    TextColumn,
    TimeElapsedColumn,
)
from rich.table import Table

from affineam import __version__
from affineam.algebra.rational import format_rational
from affineam.config import ExperimentConfig, get_default_config
from affineam.errors import AffineAMError, ConfigError
from affineam.formats import dump_spec, read_spec
from affineam.machine import VerifierSpec, validate
from affineam.machine.compiler import DEFAULT_STATE_CAP
from affineam.protocols import DESCRIPTIONS, PROTOCOL_NAMES
from affineam.report import ReportWriter
from affineam.runner import ExperimentRunner
from affineam.turing import sample_machines

app = typer.Typer(
    name="affineam",
    help="Exact simulation of affine automata verifying languages with a prover",
    no_args_is_help=True,
)
console = Console()

EXIT_ERROR = 1
EXIT_VIOLATION = 2


def print_banner():
    """Print the AffineAM banner."""
    banner = """
+-----------------------------------------------------------+
|                        AffineAM                           |
|       Affine Automata as Arthur-Merlin Verifiers          |
+-----------------------------------------------------------+
|  [EXACT]  All probabilities are rationals                 |
|  [SEED]   Sampling is reproducible                        |
+-----------------------------------------------------------+
    """
    console.print(Panel(banner, style="bold blue"))


def setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, rich_tracebacks=True)],
        force=True,
    )


def _fail(message: str) -> None:
    console.print(f"[red]Error: {escape(message)}[/]")
    raise typer.Exit(EXIT_ERROR)


def _apply_overrides(config: ExperimentConfig, overrides: dict) -> ExperimentConfig:
    """Re-validate the configuration with CLI values on top of the file values."""
    data = config.model_dump(mode="json")
    for dotted, value in overrides.items():
        if value is None:
            continue
        section, _, key = dotted.rpartition(".")
        target = data
        for part in filter(None, section.split(".")):
            target = target[part]
        target[key] = value
    return ExperimentConfig.from_dict(data)


@app.command()
def run(
    config_file: Optional[Path] = typer.Option(
        None,
        "--config", "-c",
        help="Path to an experiment configuration file (JSON)",
    ),
    protocol: Optional[str] = typer.Option(
        None,
        "--protocol", "-p",
        help=f"Protocol to evaluate ({', '.join(PROTOCOL_NAMES)})",
    ),
    epsilon: Optional[str] = typer.Option(
        None,
        "--epsilon", "-e",
        help="Error bound as 'p/q' in (0, 1/2)",
    ),
    machine: Optional[str] = typer.Option(
        None,
        "--machine",
        help="Bundled machine name or machine JSON file (Turing machine protocols)",
    ),
    inputs: Optional[list[str]] = typer.Option(
        None,
        "--input", "-i",
        help="Input word; repeat for several",
    ),
    all_up_to: Optional[int] = typer.Option(
        None,
        "--all-up-to", "-n",
        help="Every word over the protocol alphabet up to this length",
    ),
    mode: Optional[str] = typer.Option(
        None,
        "--mode", "-m",
        help="exact, worst, mc or rounds",
    ),
    horizon: Optional[int] = typer.Option(None, "--horizon", help="Transition bound per run"),
    node_cap: Optional[int] = typer.Option(None, "--node-cap", help="Evaluator node cap"),
    trials: Optional[int] = typer.Option(None, "--trials", help="Monte Carlo trials"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Monte Carlo seed"),
    output: Optional[Path] = typer.Option(
        None,
        "--out", "-o",
        help="Output directory for report.csv and summary.json",
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """
    Evaluate a protocol on a set of inputs and check its declared bounds.

    Exits with 2 when an input violates its bound, 1 on configuration errors.
    """
    setup_logging(verbose)
    print_banner()

    try:
        if config_file is not None:
            config = ExperimentConfig.load_from_file(config_file)
        else:
            config = get_default_config(protocol or "middle")
        overrides = {
            "protocol.name": protocol,
            "protocol.epsilon": epsilon,
            "protocol.machine": machine,
            "mode": mode,
            "engine.horizon": horizon,
            "engine.node_cap": node_cap,
            "sampling.trials": trials,
            "sampling.seed": seed,
            "report.output_path": str(output) if output else None,
        }
        if inputs:
            overrides["inputs.words"] = list(inputs)
            if all_up_to is None:
                config.inputs.all_up_to = None
        overrides["inputs.all_up_to"] = all_up_to
        config = _apply_overrides(config, overrides)
        runner = ExperimentRunner(config)
        bundle = runner.bundle
    except (AffineAMError, KeyError) as e:
        _fail(str(e))

    console.print(f"\n[bold green]Protocol:[/] {bundle.name}")
    console.print(f"[dim]Error bound:[/] {format_rational(bundle.epsilon)}")
    console.print(f"[dim]Mode:[/] {config.mode}")
    console.print(f"[dim]Output directory:[/] {config.report.output_path}")
    for note in bundle.notes:
        console.print(f"[yellow]Note:[/] {note}")

    with Progress(
        SpinnerColumn(spinner_name="simpleDots"),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TaskProgressColumn(),
        TimeElapsedColumn(),
        console=console,
    ) as progress:
        task = progress.add_task("Evaluating inputs...", total=None)
        result = runner.run(progress, task_id=task)

    writer = ReportWriter(config.report)
    writer.render(result, console)
    config.ensure_directories()
    for path in writer.write(result):
        console.print(f"[dim]Wrote:[/] {path}")

    if result.violations:
        console.print(
            f"\n[bold red][FAIL] {len(result.violations)} of {len(result.rows)} inputs "
            "violate their bound[/]"
        )
        raise typer.Exit(EXIT_VIOLATION)
    console.print(f"\n[bold green][PASS] All {len(result.rows)} inputs within their bound[/]")


def _load_target(target: str, epsilon: str, machine: Optional[str]) -> VerifierSpec:
    path = Path(target)
    if target not in PROTOCOL_NAMES and path.exists():
        return read_spec(path)
    config = get_default_config(target)
    config = _apply_overrides(config, {"protocol.epsilon": epsilon, "protocol.machine": machine})
    return ExperimentRunner(config).bundle.verifier


@app.command()
def inspect(
    target: str = typer.Argument(
        ...,
        help="Protocol name or path to a verifier spec file (JSON)",
    ),
    epsilon: str = typer.Option("1/3", "--epsilon", "-e", help="Error bound of a protocol"),
    machine: Optional[str] = typer.Option(None, "--machine", help="Machine of a protocol"),
    matrices: bool = typer.Option(
        True,
        "--matrices/--no-matrices",
        help="Print every operator matrix",
    ),
    dump: Optional[Path] = typer.Option(
        None,
        "--dump", "-d",
        help="Write the verifier in explicit form to this file",
    ),
    state_cap: int = typer.Option(
        DEFAULT_STATE_CAP, "--state-cap", help="Controller states to explore"
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """
    Show a verifier's registers and operators and validate it.

    Exits with 1 when the verifier fails validation.
    """
    setup_logging(verbose)
    print_banner()

    try:
        spec = _load_target(target, epsilon, machine)
    except (AffineAMError, KeyError) as e:
        _fail(str(e))

    console.print(f"\n[bold]Verifier:[/] {spec.name} ({spec.mode.value})")
    console.print(f"[dim]Alphabet:[/] {' '.join(spec.alphabet)}")
    console.print(f"[dim]Communication alphabet:[/] {' '.join(spec.comm_alphabet)}")

    registers = Table(title="Registers")
    registers.add_column("Register")
    registers.add_column("Dimension", justify="right")
    registers.add_column("Operators", justify="right")
    registers.add_column("Accepting")
    for reg in spec.registers:
        registers.add_row(
            reg.name,
            str(reg.dimension),
            str(len(reg.operators)),
            ", ".join(str(i) for i in sorted(reg.accepting)),
        )
    console.print(registers)

    if matrices:
        for reg in spec.registers:
            for op in reg.operators.values():
                grid = Table(title=f"{reg.name}: {op.name}", show_header=False)
                for _ in range(op.dimension):
                    grid.add_column(justify="right")
                for row in op.rows:
                    grid.add_row(*(format_rational(x) for x in row))
                console.print(grid)

    violations = validate(spec, state_cap)
    if dump is not None:
        try:
            dump.write_text(dump_spec(spec) + "\n")
        except AffineAMError as e:
            _fail(str(e))
        console.print(f"[dim]Wrote:[/] {dump}")

    if violations:
        for violation in violations:
            console.print(f"  [red][FAIL][/] {escape(str(violation))}")
        console.print(f"\n[bold red][FAIL] {len(violations)} problem(s) found[/]")
        raise typer.Exit(EXIT_ERROR)
    console.print("\n[bold green][PASS] Verifier is well formed[/]")


@app.command()
def catalog():
    """List the bundled protocols and Turing machines."""
    print_banner()

    protocols = Table(title="Protocols")
    protocols.add_column("Name")
    protocols.add_column("Description")
    for name in PROTOCOL_NAMES:
        protocols.add_row(name, DESCRIPTIONS[name])
    console.print(protocols)

    machines = Table(title="Turing machines")
    machines.add_column("Name")
    machines.add_column("Flavor")
    machines.add_column("Input alphabet")
    machines.add_column("States", justify="right")
    for name, spec in sorted(sample_machines().items()):
        machines.add_row(
            name, spec.flavor.value, " ".join(spec.input_alphabet), str(len(spec.states))
        )
    console.print(machines)


@app.command()
def trace(
    protocol: str = typer.Argument(..., help="Protocol name"),
    word: str = typer.Argument("", help="Input word"),
    seed: int = typer.Option(0, "--seed", "-s", help="Seed of the verifier's coins"),
    epsilon: str = typer.Option("1/3", "--epsilon", "-e", help="Error bound"),
    machine: Optional[str] = typer.Option(None, "--machine", help="Machine of a protocol"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """
    Print the transcript of one run against the honest prover.
    """
    setup_logging(verbose)

    try:
        config = _apply_overrides(
            get_default_config(protocol),
            {"protocol.epsilon": epsilon, "protocol.machine": machine, "inputs.words": [word]},
        )
        runner = ExperimentRunner(config)
        record = runner.trace(word, seed)
    except (AffineAMError, KeyError) as e:
        _fail(str(e))

    table = Table(title=f"{runner.bundle.name} on {word or 'ε'} (seed {seed})")
    table.add_column("#", justify="right")
    table.add_column("Event")
    table.add_column("State")
    table.add_column("Head", justify="right")
    table.add_column("Symbol")
    table.add_column("Outcomes")
    for index, event in enumerate(record.transcript, start=1):
        table.add_row(
            str(index),
            event.kind.value,
            str(event.state),
            str(event.head),
            event.symbol or "",
            " ".join(str(tau) for tau in event.taus),
        )
    console.print(table)
    outcome = record.outcome.value if record.outcome is not None else "unresolved"
    console.print(f"[bold]Outcome:[/] {outcome} after {record.steps} transitions")


@app.command()
def version():
    """Show the AffineAM version."""
    console.print(f"AffineAM version {__version__}")


def main():
    """Main entry point."""
    app()


if __name__ == "__main__":
    main()
