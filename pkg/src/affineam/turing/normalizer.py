"""
Normal form for alternating machines: every branching step has exactly two
branches and branching states alternate between existential and universal.
"""

from collections import deque
from dataclasses import replace

from affineam.errors import AlternationError, FlavorError
from affineam.turing.models import Flavor, StateKind, TuringMachineSpec


def normalize_alternating(machine: TuringMachineSpec) -> TuringMachineSpec:
    """
    Pad single-branch steps of branching states by duplicating the branch.

    Raises:
        FlavorError: For deterministic machines
        AlternationError: If a step has more than two branches, a
            deterministic state branches, or two branching states of the same
            kind follow each other
    """
    if machine.flavor is not Flavor.ALTERNATING:
        raise FlavorError(f"{machine.name} is not an alternating machine")

    transitions = dict(machine.transitions)
    for state in machine.states:
        if machine.is_halting(state):
            continue
        kind = machine.kind(state)
        for symbol in machine.symbols:
            actions = machine.actions(state, symbol)
            if len(actions) > 2:
                raise AlternationError(f"delta({state}, {symbol}) has {len(actions)} branches")
            if kind is StateKind.DETERMINISTIC:
                if len(actions) != 1:
                    raise AlternationError(f"deterministic state {state} branches on {symbol}")
            elif len(actions) == 1:
                transitions[(state, symbol)] = actions * 2

    normalized = replace(machine, transitions=transitions)
    _check_alternation(normalized)
    return normalized


def _check_alternation(machine: TuringMachineSpec) -> None:
    successors: dict[str, set[str]] = {state: set() for state in machine.states}
    for (state, _), actions in machine.transitions.items():
        successors[state].update(action.state for action in actions)

    for start in machine.states:
        kind = machine.kind(start)
        if kind is StateKind.DETERMINISTIC:
            continue
        seen = set()
        queue = deque(successors[start])
        while queue:
            state = queue.popleft()
            if state in seen:
                continue
            seen.add(state)
            reached = machine.kind(state)
            if reached is kind:
                raise AlternationError(
                    f"{kind.value} state {start} reaches {state} without alternating"
                )
            if reached is StateKind.DETERMINISTIC:
                queue.extend(successors[state])
