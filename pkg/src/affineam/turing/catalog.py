"""
Bundled desk-scale machines.
"""

from typing import Callable, Iterable

from affineam.turing.models import (
    TM_LEFT,
    TM_RIGHT,
    Flavor,
    StateKind,
    TMAction,
    TuringMachineSpec,
)
from affineam.turing.normalizer import normalize_alternating

ACCEPT = "qa"
REJECT = "qr"

Table = dict[tuple[str, str], tuple[str, str, int]]


def _transitions(table: Table) -> dict[tuple[str, str], tuple[TMAction, ...]]:
    return {key: (TMAction(*entry),) for key, entry in table.items()}


def equal_blocks() -> TuringMachineSpec:
    """
    {0^n 1^n}: cross off the leftmost 0 as X and the leftmost 1 as Y.

    q1 finds the next 0, q2 runs right to the first 1, q3 returns to the
    last X, q4 checks that only Ys remain.
    """
    table: Table = {
        ("q0", TM_LEFT): (TM_LEFT, "q1", 1),
        ("q1", "X"): ("X", "q1", 1),
        ("q1", "0"): ("X", "q2", 1),
        ("q1", "Y"): ("Y", "q4", 1),
        ("q1", TM_RIGHT): (TM_RIGHT, ACCEPT, 0),
        ("q2", "0"): ("0", "q2", 1),
        ("q2", "Y"): ("Y", "q2", 1),
        ("q2", "1"): ("Y", "q3", -1),
        ("q3", "0"): ("0", "q3", -1),
        ("q3", "Y"): ("Y", "q3", -1),
        ("q3", "X"): ("X", "q1", 1),
        ("q4", "Y"): ("Y", "q4", 1),
        ("q4", TM_RIGHT): (TM_RIGHT, ACCEPT, 0),
    }
    return TuringMachineSpec(
        name="equal-blocks",
        states=("q0", "q1", "q2", "q3", "q4", ACCEPT, REJECT),
        initial="q0",
        accept=ACCEPT,
        reject=REJECT,
        input_alphabet=("0", "1"),
        tape_alphabet=("0", "1", "X", "Y"),
        transitions=_transitions(table),
    )


def palindromes() -> TuringMachineSpec:
    """
    Palindromes over {0,1}: mark the leftmost unmarked symbol, run to the
    rightmost unmarked one and compare.
    """
    table: Table = {
        ("q0", TM_LEFT): (TM_LEFT, "q1", 1),
        ("q1", "0"): ("X", "r0", 1),
        ("q1", "1"): ("X", "r1", 1),
        ("q1", "X"): ("X", ACCEPT, 0),
        ("q1", TM_RIGHT): (TM_RIGHT, ACCEPT, 0),
    }
    for bit in "01":
        other = "1" if bit == "0" else "0"
        run, check = f"r{bit}", f"c{bit}"
        table[(run, "0")] = ("0", run, 1)
        table[(run, "1")] = ("1", run, 1)
        table[(run, "X")] = ("X", check, -1)
        table[(run, TM_RIGHT)] = (TM_RIGHT, check, -1)
        table[(check, bit)] = ("X", "b", -1)
        table[(check, "X")] = ("X", ACCEPT, 0)
        table[(check, other)] = (other, REJECT, 0)
    table[("b", "0")] = ("0", "b", -1)
    table[("b", "1")] = ("1", "b", -1)
    table[("b", "X")] = ("X", "q1", 1)
    return TuringMachineSpec(
        name="palindromes",
        states=("q0", "q1", "r0", "r1", "c0", "c1", "b", ACCEPT, REJECT),
        initial="q0",
        accept=ACCEPT,
        reject=REJECT,
        input_alphabet=("0", "1"),
        tape_alphabet=("0", "1", "X"),
        transitions=_transitions(table),
    )


def ones_at_both_ends() -> TuringMachineSpec:
    """
    Toy alternating machine for words that start and end with 1.

    The universal start state sends one branch to check the first symbol and
    one to walk to the last symbol. Both branches finish in an existential
    state, so every leaf sits at branching depth 2.
    """
    table: Table = {
        ("f", "1"): ("1", "e1", 0),
        ("f", "0"): ("0", "e0", 0),
        ("f", TM_RIGHT): (TM_RIGHT, "e0", 0),
        ("w", "0"): ("0", "w", 1),
        ("w", "1"): ("1", "w", 1),
        ("w", TM_RIGHT): (TM_RIGHT, "l", -1),
        ("l", "1"): ("1", "e1", 0),
        ("l", "0"): ("0", "e0", 0),
        ("l", TM_LEFT): (TM_LEFT, "e0", 1),
    }
    transitions = _transitions(table)
    transitions[("q0", TM_LEFT)] = (TMAction(TM_LEFT, "f", 1), TMAction(TM_LEFT, "w", 1))
    transitions[("e1", "1")] = (TMAction("1", ACCEPT, 0), TMAction("1", REJECT, 0))
    for symbol in ("0", "1", TM_RIGHT):
        transitions[("e0", symbol)] = (TMAction(symbol, REJECT, 0),)
    transitions[("e0", TM_LEFT)] = (TMAction(TM_LEFT, REJECT, 1),)
    machine = TuringMachineSpec(
        name="ones-at-both-ends",
        states=("q0", "f", "w", "l", "e0", "e1", ACCEPT, REJECT),
        initial="q0",
        accept=ACCEPT,
        reject=REJECT,
        input_alphabet=("0", "1"),
        tape_alphabet=("0", "1"),
        transitions=transitions,
        flavor=Flavor.ALTERNATING,
        kinds={
            "q0": StateKind.UNIVERSAL,
            "e0": StateKind.EXISTENTIAL,
            "e1": StateKind.EXISTENTIAL,
        },
    )
    return normalize_alternating(machine)


MEMBER_INSTANCE = "1A0,0E1,1"
NON_MEMBER_INSTANCE = "1A0,0E0,0"


def contains_one_reduction() -> TuringMachineSpec:
    """
    Linear-space reduction from {w : w contains a 1} to the knapsack game.

    The machine scans for a 1 and then walks through a chain of output
    states, one per emitted symbol, without touching the tape. Members emit
    an instance the existential player wins, non-members one it loses. The
    accepting state is the only halting state reached.
    """
    table: Table = {
        ("q0", TM_LEFT): (TM_LEFT, "s", 1),
        ("s", "0"): ("0", "s", 1),
        ("s", "1"): ("1", "y0", 0),
        ("s", TM_RIGHT): (TM_RIGHT, "n0", 0),
    }
    outputs = {}
    states = ["q0", "s"]
    for prefix, instance in (("y", MEMBER_INSTANCE), ("n", NON_MEMBER_INSTANCE)):
        chain = [f"{prefix}{i}" for i in range(len(instance))]
        for i, state in enumerate(chain):
            outputs[state] = instance[i]
            target = chain[i + 1] if i + 1 < len(chain) else ACCEPT
            for symbol in ("0", "1", TM_RIGHT):
                table[(state, symbol)] = (symbol, target, 0)
        states.extend(chain)
    states.extend([ACCEPT, REJECT])
    return TuringMachineSpec(
        name="contains-one-reduction",
        states=tuple(states),
        initial="q0",
        accept=ACCEPT,
        reject=REJECT,
        input_alphabet=("0", "1"),
        tape_alphabet=("0", "1"),
        transitions=_transitions(table),
        outputs=outputs,
    )


_BUILDERS: dict[str, Callable[[], TuringMachineSpec]] = {
    "equal-blocks": equal_blocks,
    "palindromes": palindromes,
    "ones-at-both-ends": ones_at_both_ends,
    "contains-one-reduction": contains_one_reduction,
}

_MEMBERSHIP: dict[str, Callable[[str], bool]] = {
    "equal-blocks": lambda w: len(w) % 2 == 0 and w == "0" * (len(w) // 2) + "1" * (len(w) // 2),
    "palindromes": lambda w: w == w[::-1],
    "ones-at-both-ends": lambda w: len(w) >= 1 and w[0] == "1" and w[-1] == "1",
    # halts accepting everywhere; the reduced language lives in the written instance
    "contains-one-reduction": lambda w: True,
}


def sample_machines() -> dict[str, TuringMachineSpec]:
    """The bundled machines by name."""
    return {name: build() for name, build in _BUILDERS.items()}


def machine_names() -> Iterable[str]:
    return tuple(_BUILDERS)


def get_machine(name: str) -> TuringMachineSpec:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"no bundled machine named {name!r}") from None


def reference_membership(name: str) -> Callable[[str], bool]:
    """Direct description of the language a bundled machine decides."""
    return _MEMBERSHIP[name]
