"""
Single-tape Turing machines and their configurations.

The work tape is the input between the boundary symbols, ¢w$. A
configuration uqv is kept as the tape cells plus the state and the index of
the cell under the head, so u = cells[:head] and v = cells[head:].
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

TM_LEFT = "¢"
TM_RIGHT = "$"


class Flavor(str, Enum):
    DETERMINISTIC = "deterministic"
    ALTERNATING = "alternating"


class StateKind(str, Enum):
    """Branching behaviour of a state of an alternating machine."""

    DETERMINISTIC = "deterministic"
    EXISTENTIAL = "existential"
    UNIVERSAL = "universal"


@dataclass(frozen=True)
class TMAction:
    """
    One entry of delta(q, x).

    Attributes:
        write: Symbol written over the scanned cell
        state: Next state q'
        move: Head move t in {-1, 0, +1}
    """

    write: str
    state: str
    move: int


@dataclass(frozen=True)
class TuringMachineSpec:
    """
    Single-tape deterministic or alternating machine.

    Attributes:
        name: Catalog or file name
        states: All states; names must not clash with tape symbols
        initial: q_0
        accept: q_a
        reject: q_r
        input_alphabet: Symbols allowed in w
        tape_alphabet: Work symbols, a superset of the input alphabet, without ¢ and $
        transitions: delta; alternating branching states carry two actions
        flavor: DETERMINISTIC or ALTERNATING
        kinds: State kinds of an alternating machine (default DETERMINISTIC)
        outputs: Output states of a reduction machine and the symbol each emits
    """

    name: str
    states: tuple[str, ...]
    initial: str
    accept: str
    reject: str
    input_alphabet: tuple[str, ...]
    tape_alphabet: tuple[str, ...]
    transitions: dict[tuple[str, str], tuple[TMAction, ...]] = field(hash=False)
    flavor: Flavor = Flavor.DETERMINISTIC
    kinds: dict[str, StateKind] = field(default_factory=dict, hash=False)
    outputs: dict[str, str] = field(default_factory=dict, hash=False)

    @property
    def symbols(self) -> tuple[str, ...]:
        """Every symbol a cell can hold."""
        return (TM_LEFT, *self.tape_alphabet, TM_RIGHT)

    @property
    def config_alphabet(self) -> tuple[str, ...]:
        """
        Ordered alphabet of configuration strings.

        Symbol k has digit k when a configuration is read as a base-n number;
        $ comes first so the digit 0 is the right boundary.
        """
        return (TM_RIGHT, TM_LEFT, *self.tape_alphabet, *self.states)

    def is_halting(self, state: str) -> bool:
        return state in (self.accept, self.reject)

    def kind(self, state: str) -> StateKind:
        return self.kinds.get(state, StateKind.DETERMINISTIC)

    def actions(self, state: str, symbol: str) -> tuple[TMAction, ...]:
        """
        delta(state, symbol); undefined entries go to q_r.

        The implicit rejecting move keeps the symbol and, on ¢, steps right
        so the boundary rule holds for it too.
        """
        found = self.transitions.get((state, symbol))
        if found is not None:
            return found
        return (TMAction(symbol, self.reject, 1 if symbol == TM_LEFT else 0),)

    def output_of(self, state: str) -> Optional[str]:
        return self.outputs.get(state)


@dataclass(frozen=True)
class TMConfiguration:
    """
    Configuration uqv.

    Attributes:
        cells: Tape contents, ¢ first and $ last
        state: Current state q
        head: Index of the scanned cell (leftmost symbol of v)
    """

    cells: tuple[str, ...]
    state: str
    head: int

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.cells[: self.head] + (self.state,) + self.cells[self.head :]

    @property
    def text(self) -> str:
        return "".join(self.symbols)

    @property
    def scanned(self) -> str:
        return self.cells[self.head]

    def __len__(self) -> int:
        return len(self.cells) + 1

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class ConfigurationStream:
    """
    c_0, c_1, ... of a deterministic run.

    Attributes:
        configurations: The configurations in order
        truncated: True when the run was cut at max_steps before halting
    """

    configurations: tuple[TMConfiguration, ...]
    truncated: bool = False

    @property
    def last(self) -> TMConfiguration:
        return self.configurations[-1]

    def __iter__(self):
        return iter(self.configurations)

    def __len__(self) -> int:
        return len(self.configurations)

    def __getitem__(self, index: int) -> TMConfiguration:
        return self.configurations[index]
