"""
Static checks on verifier specs.

validate() never raises for a malformed spec; it collects violations so the
CLI can print all of them at once.
"""

from dataclasses import dataclass

from affineam.errors import AffineAMError
from affineam.machine.compiler import DEFAULT_STATE_CAP, materialize, outcome_vectors
from affineam.machine.models import (
    IDENTITY,
    LEFT_MARKER,
    RIGHT_MARKER,
    WEIGHT,
    ExplicitTable,
    Mode,
    VerifierSpec,
)


@dataclass(frozen=True)
class Violation:
    """
    One problem found by validate().

    Attributes:
        code: Short machine-readable kind, e.g. "column-sum"
        message: Human-readable description
    """

    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


def validate(spec: VerifierSpec, state_cap: int = DEFAULT_STATE_CAP) -> list[Violation]:
    """
    Check registers, operator banks and transition coverage.

    Compiled specs are materialized first; a controller that fails while being
    walked is reported as a single violation.

    Returns:
        Violations in a deterministic order; empty means the spec is valid
    """
    try:
        explicit = materialize(spec, state_cap)
    except AffineAMError as e:
        return [Violation("controller", str(e))]

    violations = _check_registers(explicit)
    violations += _check_states(explicit)
    violations += _check_transitions(explicit)
    return violations


def _check_registers(spec: VerifierSpec) -> list[Violation]:
    found = []
    for reg in spec.registers:
        if reg.dimension < 1:
            found.append(Violation("register-dimension", f"register {reg.name!r} has no entries"))
            continue
        bad_accepting = sorted(i for i in reg.accepting if not 1 <= i <= reg.dimension)
        if bad_accepting:
            found.append(
                Violation(
                    "accepting-set",
                    f"register {reg.name!r} accepts outcomes {bad_accepting} "
                    f"outside 1..{reg.dimension}",
                )
            )
        for name, op in reg.operators.items():
            if name in (IDENTITY, WEIGHT):
                found.append(Violation("reserved-name", f"operator name {name!r} is reserved"))
            if op.dimension != reg.dimension:
                found.append(
                    Violation(
                        "operator-dimension",
                        f"operator {name!r} is {op.dimension}x{op.dimension}, "
                        f"register {reg.name!r} has {reg.dimension} entries",
                    )
                )
            for column, total in op.column_defects():
                found.append(
                    Violation(
                        "column-sum",
                        f"column {column + 1} of operator {name!r} sums to {total}, not 1",
                    )
                )
    return found


def _check_states(spec: VerifierSpec) -> list[Violation]:
    table = spec.table
    assert isinstance(table, ExplicitTable)
    known = set(table.states)
    found = []
    if table.initial not in known:
        found.append(Violation("unknown-state", f"initial state {table.initial!r} is not declared"))
    for kind, members in (
        ("accepting", table.accepting),
        ("rejecting", table.rejecting),
        ("restarting", table.restarting),
    ):
        for state in sorted(members - known):
            found.append(Violation("unknown-state", f"{kind} state {state!r} is not declared"))
    overlap = (
        (table.accepting & table.rejecting)
        | (table.accepting & table.restarting)
        | (table.rejecting & table.restarting)
    )
    for state in sorted(overlap):
        found.append(Violation("halting-overlap", f"state {state!r} is in two halting sets"))
    if spec.mode is Mode.ONE_WAY and (table.rejecting or table.restarting):
        found.append(
            Violation("one-way-halting", "one-way verifiers halt only after the right end-marker")
        )
    if table.write_map and not spec.comm_alphabet:
        found.append(Violation("comm-alphabet", "communication states need a reply alphabet"))
    return found


def _check_transitions(spec: VerifierSpec) -> list[Violation]:
    table = spec.table
    assert isinstance(table, ExplicitTable)
    known = set(table.states)
    two_way = spec.mode is Mode.TWO_WAY
    banks = [reg.operators for reg in spec.registers]
    found = []

    for state in table.states:
        if two_way and table.outcome(state) is not None:
            continue
        if state in table.write_map:
            for reply in spec.comm_alphabet:
                target = table.reply_map.get((state, reply))
                if target is None:
                    found.append(
                        Violation(
                            "missing-reply", f"no transition for reply {reply!r} in {state!r}"
                        )
                    )
                elif target not in known:
                    found.append(
                        Violation("unknown-state", f"reply leads to undeclared {target!r}")
                    )
            continue

        for symbol in spec.tape_alphabet:
            actions = table.affine_map.get((state, symbol))
            if actions is None:
                found.append(
                    Violation("missing-affine", f"no affine transition for ({state!r}, {symbol!r})")
                )
                continue
            if len(actions) != len(spec.registers):
                found.append(
                    Violation(
                        "action-count",
                        f"({state!r}, {symbol!r}) has {len(actions)} actions "
                        f"for {len(spec.registers)} registers",
                    )
                )
                continue
            for bank, action in zip(banks, actions):
                if action == WEIGHT and not two_way:
                    found.append(
                        Violation("one-way-weighting", f"({state!r}, {symbol!r}) weights mid-input")
                    )
                elif action not in (IDENTITY, WEIGHT) and action not in bank:
                    found.append(
                        Violation("unknown-operator", f"({state!r}, {symbol!r}) uses {action!r}")
                    )
            for taus in outcome_vectors(spec.registers, actions):
                found += _check_classical(spec, state, symbol, taus, known, two_way)
    return found


def _check_classical(spec, state, symbol, taus, known, two_way) -> list[Violation]:
    entry = spec.table.classical_map.get((state, symbol, taus))
    where = f"({state!r}, {symbol!r}, {taus})"
    if entry is None:
        return [Violation("missing-classical", f"no classical transition for {where}")]
    target, move = entry
    found = []
    if target not in known:
        found.append(Violation("unknown-state", f"{where} leads to undeclared {target!r}"))
    if move not in (-1, 0, 1):
        found.append(Violation("bad-move", f"{where} moves the head by {move}"))
    elif not two_way and move != 1:
        found.append(Violation("one-way-move", f"{where} does not advance the head"))
    elif two_way and (
        (symbol == LEFT_MARKER and move == -1) or (symbol == RIGHT_MARKER and move == 1)
    ):
        found.append(Violation("head-bounds", f"{where} moves off the padded input"))
    return found
