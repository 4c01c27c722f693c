"""
Data model for verifiers with deterministic and affine states.

A verifier is a finite control plus a list of affine registers. Its
transition behaviour lives behind the TransitionTable protocol so that
tables loaded from files and tables compiled from protocol controllers are
interchangeable.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Hashable, Iterator, Optional, Protocol, Sequence

from affineam.algebra import AffineOperator, AffineState
from affineam.errors import MissingTransitionError

State = Hashable

LEFT_MARKER = "⊢"
RIGHT_MARKER = "⊣"

# reserved action tags in the affine transition
IDENTITY = "I"
WEIGHT = "W"


class Mode(str, Enum):
    """Head discipline of a verifier."""

    ONE_WAY = "one-way"
    TWO_WAY = "two-way"


class Outcome(str, Enum):
    """Kinds of halting leaves."""

    ACCEPT = "accept"
    REJECT = "reject"
    RESTART = "restart"


@dataclass(frozen=True)
class RegisterSpec:
    """
    One affine register.

    Attributes:
        name: Register name, for reports
        dimension: Number of basis states m
        operators: Operator bank by name
        accepting: 1-based accepting basis indices (one-way final weighting)
    """

    name: str
    dimension: int
    operators: dict[str, AffineOperator] = field(default_factory=dict)
    accepting: frozenset[int] = frozenset({1})

    def operator(self, name: str) -> AffineOperator:
        return self.operators[name]


class TransitionTable(Protocol):
    """
    Transition behaviour of a verifier.

    affine(s, sigma) returns one action per register: an operator name,
    IDENTITY or WEIGHT. classical(s, sigma, tau) returns (s', move) where tau
    holds 0 for registers that were not weighted.
    """

    initial: State

    def outcome(self, state: State) -> Optional[Outcome]: ...

    def write(self, state: State) -> Optional[str]: ...

    def on_reply(self, state: State, reply: str) -> State: ...

    def affine(self, state: State, symbol: str) -> tuple[str, ...]: ...

    def classical(self, state: State, symbol: str, taus: tuple[int, ...]) -> tuple[State, int]: ...

    def label(self, state: State) -> str: ...


@dataclass
class ExplicitTable:
    """
    Transition tables as plain dictionaries (string states).

    Attributes:
        initial: Initial state s_I
        states: All states, in declaration order
        accepting: S_a
        rejecting: S_r (two-way only)
        restarting: States that end a round with a Restart leaf
        affine_map: delta_a
        classical_map: delta_c
        write_map: chi on communication states
        reply_map: Prover-reply transition
        labels: Optional human-readable state descriptions
    """

    initial: str
    states: tuple[str, ...]
    accepting: frozenset[str] = frozenset()
    rejecting: frozenset[str] = frozenset()
    restarting: frozenset[str] = frozenset()
    affine_map: dict[tuple[str, str], tuple[str, ...]] = field(default_factory=dict)
    classical_map: dict[tuple[str, str, tuple[int, ...]], tuple[str, int]] = field(
        default_factory=dict
    )
    write_map: dict[str, str] = field(default_factory=dict)
    reply_map: dict[tuple[str, str], str] = field(default_factory=dict)
    labels: dict[str, str] = field(default_factory=dict)

    def outcome(self, state: State) -> Optional[Outcome]:
        if state in self.accepting:
            return Outcome.ACCEPT
        if state in self.rejecting:
            return Outcome.REJECT
        if state in self.restarting:
            return Outcome.RESTART
        return None

    def write(self, state: State) -> Optional[str]:
        return self.write_map.get(state)

    def on_reply(self, state: State, reply: str) -> State:
        try:
            return self.reply_map[(state, reply)]
        except KeyError:
            raise MissingTransitionError(
                f"no reply transition for ({state}, {reply!r})", state=state, symbol=reply
            ) from None

    def affine(self, state: State, symbol: str) -> tuple[str, ...]:
        try:
            return self.affine_map[(state, symbol)]
        except KeyError:
            raise MissingTransitionError(
                f"no affine transition for ({state}, {symbol!r})", state=state, symbol=symbol
            ) from None

    def classical(self, state: State, symbol: str, taus: tuple[int, ...]) -> tuple[State, int]:
        try:
            return self.classical_map[(state, symbol, taus)]
        except KeyError:
            raise MissingTransitionError(
                f"no classical transition for ({state}, {symbol!r}, {taus})",
                state=state,
                symbol=symbol,
            ) from None

    def label(self, state: State) -> str:
        return self.labels.get(state, str(state))


@dataclass(frozen=True, eq=False)
class VerifierSpec:
    """
    Complete one-way or two-way verifier.

    Attributes:
        name: Protocol or file name
        mode: ONE_WAY (real time, single final weighting) or TWO_WAY
        alphabet: Input alphabet, without end-markers
        comm_alphabet: Reply alphabet Gamma
        registers: Affine registers, all starting in e_1
        table: Transition behaviour
    """

    name: str
    mode: Mode
    alphabet: tuple[str, ...]
    comm_alphabet: tuple[str, ...]
    registers: tuple[RegisterSpec, ...]
    table: TransitionTable

    @property
    def initial(self) -> State:
        return self.table.initial

    @property
    def tape_alphabet(self) -> tuple[str, ...]:
        return (LEFT_MARKER,) + self.alphabet + (RIGHT_MARKER,)

    def outcome_of(self, state: State) -> Optional[Outcome]:
        return self.table.outcome(state)

    def is_communication(self, state: State) -> bool:
        return self.table.write(state) is not None

    def materialized(self) -> "VerifierSpec":
        """Same verifier with explicit, string-keyed tables."""
        from affineam.machine.compiler import materialize

        return materialize(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VerifierSpec):
            return NotImplemented
        return (
            self.name == other.name
            and self.mode == other.mode
            and self.alphabet == other.alphabet
            and self.comm_alphabet == other.comm_alphabet
            and self.registers == other.registers
            and self.table == other.table
        )

    __hash__ = None


@dataclass(frozen=True)
class MachineConfiguration:
    """
    Snapshot (s, j, v_1, ..., v_k) of a running verifier.

    Attributes:
        state: Deterministic state
        head: Head position; 0 is the left end-marker, |w|+1 the right one
        registers: Current affine state of each register
        steps: Tape steps taken
        exchanges: Prover exchanges taken
    """

    state: State
    head: int
    registers: tuple[AffineState, ...]
    steps: int = 0
    exchanges: int = 0

    @property
    def key(self) -> tuple:
        """Identity for merging: everything except the counters."""
        return (self.state, self.head, self.registers)

    @property
    def time(self) -> int:
        return self.steps + self.exchanges


@dataclass(frozen=True)
class Branch:
    """
    One successor of a step.

    Attributes:
        probability: Exact branch probability
        configuration: Successor (for leaves, the configuration it halted in)
        outcome: Set when the branch is a halting leaf
        taus: Weighting outcomes per register (0 = not weighted)
    """

    probability: Fraction
    configuration: MachineConfiguration
    outcome: Optional[Outcome] = None
    taus: tuple[int, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.outcome is not None


BranchSet = tuple[Branch, ...]


class EventKind(str, Enum):
    """Public transcript events."""

    STEP = "step"
    QUERY = "query"
    REPLY = "reply"
    RESTART = "restart"


@dataclass(frozen=True)
class Event:
    """
    One public event.

    Attributes:
        kind: Event kind
        state: Verifier state after the event
        head: Head position after the event
        symbol: Written query symbol or prover reply
        taus: Weighting outcomes disclosed by a step
    """

    kind: EventKind
    state: State = None
    head: int = 0
    symbol: Optional[str] = None
    taus: tuple[int, ...] = ()


@dataclass(frozen=True, eq=False)
class Transcript:
    """
    Append-only public transcript, stored as a persistent linked list.

    Sibling branches share their common prefix. Counters are carried along
    so provers can read their position without walking the whole list.

    Attributes:
        event: Last event (None for the empty transcript)
        parent: Transcript before the last event
        state: Current verifier state
        head: Current head position
        length: Number of events
        rounds: Restarts so far
        replies: Prover replies in the current round
        outcomes: (register index, tau) weighting outcomes in the current round
    """

    event: Optional[Event] = None
    parent: Optional["Transcript"] = None
    state: State = None
    head: int = 0
    length: int = 0
    rounds: int = 0
    replies: int = 0
    outcomes: tuple[tuple[int, int], ...] = ()

    @classmethod
    def start(cls, state: State, head: int = 0) -> "Transcript":
        return cls(state=state, head=head)

    def extend(self, event: Event) -> "Transcript":
        rounds, replies, outcomes = self.rounds, self.replies, self.outcomes
        if event.kind is EventKind.RESTART:
            rounds, replies, outcomes = rounds + 1, 0, ()
        elif event.kind is EventKind.REPLY:
            replies += 1
        elif event.kind is EventKind.STEP and any(event.taus):
            outcomes = outcomes + tuple((i, tau) for i, tau in enumerate(event.taus) if tau)
        return Transcript(
            event=event,
            parent=self,
            state=event.state,
            head=event.head,
            length=self.length + 1,
            rounds=rounds,
            replies=replies,
            outcomes=outcomes,
        )

    @property
    def query(self) -> Optional[str]:
        """Pending query symbol, if the last event is a query."""
        if self.event is not None and self.event.kind is EventKind.QUERY:
            return self.event.symbol
        return None

    def events(self) -> list[Event]:
        chain = []
        node: Optional[Transcript] = self
        while node is not None and node.event is not None:
            chain.append(node.event)
            node = node.parent
        chain.reverse()
        return chain

    def round_events(self) -> list[Event]:
        """Events since the last restart."""
        events = self.events()
        for index in range(len(events) - 1, -1, -1):
            if events[index].kind is EventKind.RESTART:
                return events[index + 1 :]
        return events

    def key(self) -> tuple[Event, ...]:
        return tuple(self.events())

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events())

    def __len__(self) -> int:
        return self.length


def pad(word: Sequence[str]) -> tuple[str, ...]:
    """Read-only tape contents: left marker, the word, right marker."""
    return (LEFT_MARKER, *word, RIGHT_MARKER)
