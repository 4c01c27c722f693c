"""
Successor function, honest configuration streams and alternating evaluation.
"""

from functools import lru_cache
from typing import Optional, Sequence, Union

from affineam.errors import AlphabetError, FlavorError, HaltedError, TuringError
from affineam.turing.models import (
    TM_LEFT,
    TM_RIGHT,
    ConfigurationStream,
    Flavor,
    StateKind,
    TMAction,
    TMConfiguration,
    TuringMachineSpec,
)

DEFAULT_MAX_STEPS = 10_000


def initial_config(machine: TuringMachineSpec, word: Sequence[str]) -> TMConfiguration:
    """
    c_0 = q_0 ¢ w $.

    Raises:
        AlphabetError: If w has a symbol outside the input alphabet
    """
    for symbol in word:
        if symbol not in machine.input_alphabet:
            raise AlphabetError(symbol)
    return TMConfiguration((TM_LEFT, *word, TM_RIGHT), machine.initial, 0)


def apply_action(config: TMConfiguration, action: TMAction) -> TMConfiguration:
    """
    Write, change state, move.

    With t = -1 the new state lands left of the cell before the rewritten
    one; with t = 0 it stays in front of the rewritten cell; with t = +1 it
    follows it.
    """
    cells = list(config.cells)
    cells[config.head] = action.write
    head = config.head + action.move
    if not 0 <= head < len(cells):
        raise TuringError(f"head left the tape at {head} in {config.text}")
    return TMConfiguration(tuple(cells), action.state, head)


def successors(machine: TuringMachineSpec, config: TMConfiguration) -> tuple[TMConfiguration, ...]:
    """
    All successors: one for a deterministic step, two for a branching step.

    Raises:
        HaltedError: If the configuration is halting
    """
    if machine.is_halting(config.state):
        raise HaltedError(f"{config.text} is a halting configuration")
    return tuple(
        apply_action(config, action) for action in machine.actions(config.state, config.scanned)
    )


def next_config(
    machine: TuringMachineSpec, config: TMConfiguration
) -> Union[TMConfiguration, tuple[TMConfiguration, TMConfiguration]]:
    """
    next(c): a configuration, or the pair of branches at an alternating step.

    Raises:
        HaltedError: If the configuration is halting
    """
    found = successors(machine, config)
    if len(found) == 1:
        return found[0]
    if machine.flavor is Flavor.DETERMINISTIC:
        raise FlavorError(f"deterministic machine {machine.name} branches at {config.text}")
    return found[0], found[1]


def branch(machine: TuringMachineSpec, config: TMConfiguration, choice: int) -> TMConfiguration:
    """Successor along branch ``choice`` (0 or 1); single successors ignore the choice."""
    found = successors(machine, config)
    return found[choice] if len(found) > 1 else found[0]


def honest_stream(
    machine: TuringMachineSpec, word: Sequence[str], max_steps: int = DEFAULT_MAX_STEPS
) -> ConfigurationStream:
    """
    c_0, next(c_0), ... up to the first halting configuration.

    Raises:
        FlavorError: For alternating machines
    """
    if machine.flavor is not Flavor.DETERMINISTIC:
        raise FlavorError(f"{machine.name} is alternating; its stream depends on choices")
    config = initial_config(machine, word)
    found = [config]
    for _ in range(max_steps):
        if machine.is_halting(config.state):
            return ConfigurationStream(tuple(found))
        config = next_config(machine, config)
        found.append(config)
    return ConfigurationStream(tuple(found), truncated=not machine.is_halting(config.state))


def run(
    machine: TuringMachineSpec, word: Sequence[str], max_steps: int = DEFAULT_MAX_STEPS
) -> Optional[bool]:
    """Accept (True), reject (False) or None if still running after max_steps."""
    if machine.flavor is Flavor.ALTERNATING:
        return evaluate_alternating(machine, word, max_steps)
    stream = honest_stream(machine, word, max_steps)
    if stream.truncated:
        return None
    return stream.last.state == machine.accept


def evaluate_alternating(
    machine: TuringMachineSpec, word: Sequence[str], max_depth: int = DEFAULT_MAX_STEPS
) -> bool:
    """
    Acceptance of an alternating machine: existential states need one
    accepting branch, universal states need both.

    Raises:
        TuringError: If some branch runs longer than max_depth
    """
    return accepts_from(machine, initial_config(machine, word), max_depth)


def accepts_from(
    machine: TuringMachineSpec, config: TMConfiguration, max_depth: int = DEFAULT_MAX_STEPS
) -> bool:
    """Acceptance of the computation tree rooted at ``config``."""

    @lru_cache(maxsize=None)
    def accepts(cfg: TMConfiguration, budget: int) -> bool:
        if cfg.state == machine.accept:
            return True
        if cfg.state == machine.reject:
            return False
        if budget == 0:
            raise TuringError(f"{machine.name} exceeds depth {max_depth}")
        found = successors(machine, cfg)
        results = (accepts(nxt, budget - 1) for nxt in found)
        if machine.kind(cfg.state) is StateKind.UNIVERSAL:
            return all(results)
        return any(results)

    return accepts(config, max_depth)


def computation_tree(
    machine: TuringMachineSpec, word: Sequence[str], max_depth: int = DEFAULT_MAX_STEPS
) -> list[tuple[tuple[int, ...], TMConfiguration]]:
    """
    Leaves of the computation tree, each with its branch choices.

    The path records one 0/1 choice per branching step, so its length is the
    branching depth of the leaf.
    """
    leaves = []
    stack = [((), initial_config(machine, word), 0)]
    while stack:
        path, config, depth = stack.pop()
        if machine.is_halting(config.state):
            leaves.append((path, config))
            continue
        if depth >= max_depth:
            raise TuringError(f"{machine.name} exceeds depth {max_depth}")
        found = successors(machine, config)
        if len(found) == 1:
            stack.append((path, found[0], depth + 1))
        else:
            for choice in (1, 0):
                stack.append((path + (choice,), found[choice], depth + 1))
    leaves.sort(key=lambda leaf: leaf[0])
    return leaves


def check_machine(machine: TuringMachineSpec) -> list[str]:
    """
    Structural problems of a machine description.

    Covers the boundary rules (on ¢ write ¢ and move right; on $ write $ and
    do not move right), the move range, unknown symbols and states, and the
    branching rules of the flavor.
    """
    problems = []
    states = set(machine.states)
    symbols = set(machine.symbols)
    overlap = states & symbols
    if overlap:
        problems.append(f"states double as tape symbols: {sorted(overlap)}")
    for required in (machine.initial, machine.accept, machine.reject):
        if required not in states:
            problems.append(f"state {required!r} is not declared")
    missing_input = [s for s in machine.input_alphabet if s not in machine.tape_alphabet]
    if missing_input:
        problems.append(f"input symbols {missing_input} are not tape symbols")

    for (state, symbol), actions in sorted(machine.transitions.items()):
        where = f"delta({state}, {symbol})"
        if state not in states or symbol not in symbols:
            problems.append(f"{where} uses an undeclared state or symbol")
        if machine.is_halting(state):
            problems.append(f"{where} leaves a halting state")
        if not actions:
            problems.append(f"{where} is empty")
        if len(actions) > 1 and machine.flavor is Flavor.DETERMINISTIC:
            problems.append(f"{where} branches in a deterministic machine")
        if len(actions) > 2:
            problems.append(f"{where} has more than two branches")
        if len(actions) > 1 and machine.kind(state) is StateKind.DETERMINISTIC:
            problems.append(f"{where} branches from a deterministic state")
        for action in actions:
            if action.move not in (-1, 0, 1):
                problems.append(f"{where} moves by {action.move}")
            if action.state not in states or action.write not in symbols:
                problems.append(f"{where} writes or enters something undeclared")
            if symbol == TM_LEFT and (action.write != TM_LEFT or action.move != 1):
                problems.append(f"{where} must write ¢ and move right")
            if symbol == TM_RIGHT and (action.write != TM_RIGHT or action.move == 1):
                problems.append(f"{where} must write $ and not move right")
            if symbol not in (TM_LEFT, TM_RIGHT) and action.write in (TM_LEFT, TM_RIGHT):
                problems.append(f"{where} writes a boundary symbol")
    for state, kind in machine.kinds.items():
        if state not in states:
            problems.append(f"kind given for undeclared state {state!r}")
        if kind is not StateKind.DETERMINISTIC and machine.flavor is Flavor.DETERMINISTIC:
            problems.append(f"deterministic machine labels {state!r} as {kind.value}")
    return problems
