"""
Compile finite controllers into transition tables.

Protocol verifiers are written as small Python controllers whose states are
tuples and whose affine actions are AffineOperator values. CompiledTable
answers the TransitionTable protocol by asking the controller once per key
and memoizing the answer; operators are registered into the register banks
by name on first use. materialize() walks the reachable state space and
produces the equivalent explicit, string-keyed tables.
"""

import logging
from collections import deque
from itertools import product
from typing import Hashable, Optional, Protocol, Sequence, Union

from affineam.algebra import AffineOperator
from affineam.errors import BranchExplosionError, MachineError
from affineam.machine.models import (
    IDENTITY,
    WEIGHT,
    ExplicitTable,
    Mode,
    Outcome,
    RegisterSpec,
    State,
    VerifierSpec,
)

logger = logging.getLogger(__name__)

Action = Union[AffineOperator, str]

DEFAULT_STATE_CAP = 200_000


class Controller(Protocol):
    """
    Finite control of a verifier, written as code.

    ``actions`` returns one entry per register: an AffineOperator, IDENTITY
    or WEIGHT. Everything must be deterministic and defined for every state,
    symbol and outcome vector the verifier can reach.
    """

    initial: Hashable

    def outcome(self, state: State) -> Optional[Outcome]: ...

    def query(self, state: State) -> Optional[str]: ...

    def on_reply(self, state: State, reply: str) -> State: ...

    def actions(self, state: State, symbol: str) -> Sequence[Action]: ...

    def transition(self, state: State, symbol: str, taus: tuple[int, ...]) -> tuple[State, int]: ...


class CompiledTable:
    """Memoizing TransitionTable over a Controller."""

    def __init__(self, controller: Controller, registers: Sequence[RegisterSpec]):
        self.controller = controller
        self.initial = controller.initial
        self._registers = tuple(registers)
        self._outcomes: dict = {}
        self._writes: dict = {}
        self._replies: dict = {}
        self._affine: dict = {}
        self._classical: dict = {}

    def outcome(self, state: State) -> Optional[Outcome]:
        try:
            return self._outcomes[state]
        except KeyError:
            result = self._outcomes[state] = self.controller.outcome(state)
            return result

    def write(self, state: State) -> Optional[str]:
        try:
            return self._writes[state]
        except KeyError:
            result = self._writes[state] = self.controller.query(state)
            return result

    def on_reply(self, state: State, reply: str) -> State:
        key = (state, reply)
        try:
            return self._replies[key]
        except KeyError:
            result = self._replies[key] = self.controller.on_reply(state, reply)
            return result

    def affine(self, state: State, symbol: str) -> tuple[str, ...]:
        key = (state, symbol)
        try:
            return self._affine[key]
        except KeyError:
            actions = self.controller.actions(state, symbol)
            if len(actions) != len(self._registers):
                raise MachineError(
                    f"controller returned {len(actions)} actions "
                    f"for {len(self._registers)} registers"
                )
            names = tuple(
                self._register(reg, action) for reg, action in zip(self._registers, actions)
            )
            self._affine[key] = names
            return names

    def classical(self, state: State, symbol: str, taus: tuple[int, ...]) -> tuple[State, int]:
        key = (state, symbol, taus)
        try:
            return self._classical[key]
        except KeyError:
            result = self._classical[key] = self.controller.transition(state, symbol, taus)
            return result

    def label(self, state: State) -> str:
        describe = getattr(self.controller, "label", None)
        return describe(state) if describe is not None else str(state)

    def cache_sizes(self) -> dict[str, int]:
        return {
            "affine": len(self._affine),
            "classical": len(self._classical),
            "replies": len(self._replies),
        }

    @staticmethod
    def _register(reg: RegisterSpec, action: Action) -> str:
        if isinstance(action, AffineOperator):
            if not action.name or action.name in (IDENTITY, WEIGHT):
                raise MachineError(f"operator for register {reg.name!r} needs a distinct name")
            existing = reg.operators.get(action.name)
            if existing is None:
                reg.operators[action.name] = action
            elif existing != action:
                raise MachineError(
                    f"two different operators named {action.name!r} in register {reg.name!r}"
                )
            return action.name
        if action in (IDENTITY, WEIGHT) or action in reg.operators:
            return action
        raise MachineError(f"register {reg.name!r} has no operator {action!r}")


def compile_controller(
    name: str,
    mode: Mode,
    alphabet: Sequence[str],
    comm_alphabet: Sequence[str],
    registers: Sequence[RegisterSpec],
    controller: Controller,
) -> VerifierSpec:
    """
    Wrap a controller as a VerifierSpec.

    Args:
        name: Verifier name
        mode: ONE_WAY or TWO_WAY
        alphabet: Input alphabet without end-markers
        comm_alphabet: Reply alphabet
        registers: Register specs; operator banks may start empty
        controller: The finite control
    """
    regs = tuple(registers)
    return VerifierSpec(
        name=name,
        mode=mode,
        alphabet=tuple(alphabet),
        comm_alphabet=tuple(comm_alphabet),
        registers=regs,
        table=CompiledTable(controller, regs),
    )


def materialize(spec: VerifierSpec, state_cap: int = DEFAULT_STATE_CAP) -> VerifierSpec:
    """
    Explicit, string-keyed tables for every reachable state.

    States are renamed s0, s1, ... in breadth-first order; the controller's
    descriptions survive as labels. Explicit specs are returned unchanged.

    Raises:
        BranchExplosionError: More than ``state_cap`` reachable states
    """
    if isinstance(spec.table, ExplicitTable):
        return spec

    table = spec.table
    two_way = spec.mode is Mode.TWO_WAY
    names: dict = {}
    order: deque = deque()

    def visit(state: State) -> str:
        if state not in names:
            if len(names) >= state_cap:
                raise BranchExplosionError(len(names) + 1, state_cap)
            names[state] = f"s{len(names)}"
            order.append(state)
        return names[state]

    visit(table.initial)
    affine_map: dict = {}
    classical_map: dict = {}
    write_map: dict = {}
    reply_map: dict = {}

    while order:
        state = order.popleft()
        label = names[state]
        if two_way and table.outcome(state) is not None:
            continue
        query = table.write(state)
        if query is not None:
            write_map[label] = query
            for reply in spec.comm_alphabet:
                reply_map[(label, reply)] = visit(table.on_reply(state, reply))
            continue
        for symbol in spec.tape_alphabet:
            actions = table.affine(state, symbol)
            affine_map[(label, symbol)] = actions
            for taus in outcome_vectors(spec.registers, actions):
                target, move = table.classical(state, symbol, taus)
                classical_map[(label, symbol, taus)] = (visit(target), move)

    states = tuple(names.values())
    by_outcome = {
        kind: frozenset(names[s] for s in names if table.outcome(s) is kind) for kind in Outcome
    }
    logger.debug(
        "materialized %s: %d states, %d tape transitions",
        spec.name,
        len(states),
        len(classical_map),
    )

    explicit = ExplicitTable(
        initial=names[table.initial],
        states=states,
        accepting=by_outcome[Outcome.ACCEPT],
        rejecting=by_outcome[Outcome.REJECT],
        restarting=by_outcome[Outcome.RESTART],
        affine_map=affine_map,
        classical_map=classical_map,
        write_map=write_map,
        reply_map=reply_map,
        labels={names[s]: table.label(s) for s in names},
    )
    registers = tuple(
        RegisterSpec(reg.name, reg.dimension, dict(reg.operators), reg.accepting)
        for reg in spec.registers
    )
    return VerifierSpec(
        name=spec.name,
        mode=spec.mode,
        alphabet=spec.alphabet,
        comm_alphabet=spec.comm_alphabet,
        registers=registers,
        table=explicit,
    )


def outcome_vectors(
    registers: Sequence[RegisterSpec], actions: Sequence[str]
) -> list[tuple[int, ...]]:
    """Every tau the deterministic part must handle for the given actions."""
    ranges = [
        range(1, reg.dimension + 1) if action == WEIGHT else (0,)
        for reg, action in zip(registers, actions)
    ]
    return [tuple(combo) for combo in product(*ranges)]
