"""
Transcript-aware expansion shared by all evaluators.
"""

from typing import Optional, Sequence

from affineam.machine import (
    Branch,
    Event,
    EventKind,
    MachineConfiguration,
    Transcript,
    VerifierSpec,
    initial_configuration,
    step,
)


def open_query(
    spec: VerifierSpec, cfg: MachineConfiguration, transcript: Transcript
) -> Optional[Transcript]:
    """Transcript with the pending query appended, or None for tape states."""
    symbol = spec.table.write(cfg.state)
    if symbol is None:
        return None
    return transcript.extend(Event(EventKind.QUERY, cfg.state, cfg.head, symbol=symbol))


def answer(
    spec: VerifierSpec,
    tape: Sequence[str],
    cfg: MachineConfiguration,
    asked: Transcript,
    reply: str,
) -> tuple[Branch, Transcript]:
    """Run the exchange for ``reply``; ``asked`` must end with the query."""
    (branch,) = step(spec, cfg, tape, reply)
    successor = branch.configuration
    return branch, asked.extend(
        Event(EventKind.REPLY, successor.state, successor.head, symbol=reply)
    )


def advance(
    spec: VerifierSpec, tape: Sequence[str], cfg: MachineConfiguration, transcript: Transcript
) -> list[tuple[Branch, Transcript]]:
    """Tape step with every branch's transcript."""
    return [
        (
            branch,
            transcript.extend(
                Event(
                    EventKind.STEP,
                    branch.configuration.state,
                    branch.configuration.head,
                    taus=branch.taus,
                )
            ),
        )
        for branch in step(spec, cfg, tape)
    ]


def restart(
    spec: VerifierSpec, cfg: MachineConfiguration, transcript: Transcript
) -> tuple[MachineConfiguration, Transcript]:
    """Re-enter the initial configuration, keeping the time counters."""
    fresh = initial_configuration(spec)
    cfg = MachineConfiguration(
        fresh.state, fresh.head, fresh.registers, cfg.steps, cfg.exchanges
    )
    return cfg, transcript.extend(Event(EventKind.RESTART, cfg.state, cfg.head))
