"""
Honest provers and restricted move sets for the bundled protocols.

Stream provers follow a plan: a function from the coins seen so far (and,
for worst-case search, the free choices already made) to the reply
sequence of the current round. Only the tail of the plan that depends on
unseen coins is missing; the prover asks for the plan again on every reply.
"""

from typing import Callable, Hashable, Optional, Sequence

from affineam.engine import Prover
from affineam.errors import MalformedInstanceError
from affineam.machine import EventKind, Transcript
from affineam.protocols.claims import ASK
from affineam.protocols.instances import EXISTENTIAL, parse_instance, play
from affineam.protocols.models import CHOICE_SYMBOLS, NO, SEPARATOR, YES
from affineam.turing import (
    Flavor,
    StateKind,
    TMConfiguration,
    TuringMachineSpec,
    accepts_from,
    branch,
    honest_stream,
    initial_config,
)

Plan = Callable[[tuple[int, ...], Optional[tuple[int, ...]]], tuple[str, ...]]

MAX_PLAN_STEPS = 10_000


def coins_of(transcript: Transcript, coin_register: Optional[int]) -> tuple[int, ...]:
    """Public coin flips of the current round, as 0/1."""
    if coin_register is None:
        return ()
    return tuple(tau - 1 for index, tau in transcript.outcomes if index == coin_register)


def free_choices(
    transcript: Transcript, free_query: str, free_symbols: Sequence[str]
) -> tuple[int, ...]:
    """Indices of the replies given to ``free_query`` in the current round."""
    found = []
    asked = False
    for event in transcript.round_events():
        if event.kind is EventKind.QUERY:
            asked = event.symbol == free_query
        elif event.kind is EventKind.REPLY:
            if asked and event.symbol in free_symbols:
                found.append(list(free_symbols).index(event.symbol))
            asked = False
    return tuple(found)


class MiddleClaimProver(Prover):
    """Says yes exactly when the head is on the given position."""

    def __init__(self, position: Optional[int]):
        self.position = position

    def reply(self, transcript: Transcript) -> str:
        if transcript.state == ASK and transcript.head == self.position:
            return YES
        return NO

    def view(self, transcript: Transcript) -> Hashable:
        return ()


class PlannedProver(Prover):
    """
    Replies from a plan of the current round.

    Args:
        plan: Maps the round's coins to its reply sequence
        coin_register: Register whose weightings are coin flips, if any
        fallback: Reply once the plan runs out
    """

    def __init__(self, plan: Plan, coin_register: Optional[int], fallback: str):
        self.plan = plan
        self.coin_register = coin_register
        self.fallback = fallback
        self._plans: dict[tuple[int, ...], tuple[str, ...]] = {}

    def reply(self, transcript: Transcript) -> str:
        tokens = self._tokens(coins_of(transcript, self.coin_register))
        index = transcript.replies
        return tokens[index] if index < len(tokens) else self.fallback

    def view(self, transcript: Transcript) -> Hashable:
        return (transcript.replies, coins_of(transcript, self.coin_register))

    def _tokens(self, coins: tuple[int, ...]) -> tuple[str, ...]:
        tokens = self._plans.get(coins)
        if tokens is None:
            tokens = self._plans[coins] = self.plan(coins, None)
        return tokens


class PlannedMoves:
    """
    Worst-case moves: the plan everywhere except at ``free_query``.

    Replies to ``free_query`` range over ``free_symbols`` and are fed back
    into the plan as choices, so the rest of the round stays consistent
    with them.
    """

    def __init__(
        self,
        plan: Plan,
        coin_register: Optional[int],
        free_query: str,
        free_symbols: Sequence[str],
        fallback: str,
    ):
        self.plan = plan
        self.coin_register = coin_register
        self.free_query = free_query
        self.free_symbols = tuple(free_symbols)
        self.fallback = fallback

    def moves(self, transcript: Transcript) -> Sequence[str]:
        if transcript.query == self.free_query:
            return self.free_symbols
        coins = coins_of(transcript, self.coin_register)
        choices = free_choices(transcript, self.free_query, self.free_symbols)
        tokens = self.plan(coins, choices)
        index = transcript.replies
        return (tokens[index],) if index < len(tokens) else (self.fallback,)

    def view(self, transcript: Transcript) -> Hashable:
        return (
            transcript.replies,
            coins_of(transcript, self.coin_register),
            free_choices(transcript, self.free_query, self.free_symbols),
        )


def deterministic_plan(machine: TuringMachineSpec, word: str) -> Plan:
    """c_0 # c_1 # ... # c_halt #."""
    stream = honest_stream(machine, word, MAX_PLAN_STEPS)
    tokens = tuple(
        symbol for config in stream for symbol in (*config.symbols, SEPARATOR)
    )
    return lambda coins, choices: tokens


def alternating_plan(machine: TuringMachineSpec, word: str) -> Plan:
    """
    One branch of the computation tree as a stream.

    Universal branches follow the coins; the plan ends after the first
    universal configuration whose coin is not public yet. Existential
    branches follow the given choices and then the accepting branch, with
    the choice symbol sent right after the state symbol.
    """

    def plan(coins: tuple[int, ...], choices: Optional[tuple[int, ...]]) -> tuple[str, ...]:
        coins_left = list(coins)
        choices_left = list(choices or ())
        config = initial_config(machine, word)
        tokens: list[str] = []
        for _ in range(MAX_PLAN_STEPS):
            symbols = list(config.symbols)
            if machine.is_halting(config.state):
                tokens.extend((*symbols, SEPARATOR))
                break
            kind = machine.kind(config.state)
            if kind is StateKind.UNIVERSAL:
                tokens.extend((*symbols, SEPARATOR))
                if not coins_left:
                    break
                config = branch(machine, config, coins_left.pop(0))
            elif kind is StateKind.EXISTENTIAL:
                choice = choices_left.pop(0) if choices_left else _accepting_branch(machine, config)
                symbols.insert(config.head + 1, CHOICE_SYMBOLS[choice])
                tokens.extend((*symbols, SEPARATOR))
                config = branch(machine, config, choice)
            else:
                tokens.extend((*symbols, SEPARATOR))
                config = branch(machine, config, 0)
        return tuple(tokens)

    return plan


def _accepting_branch(machine: TuringMachineSpec, config: TMConfiguration) -> int:
    for choice in (0, 1):
        if accepts_from(machine, branch(machine, config, choice), MAX_PLAN_STEPS):
            return choice
    return 0


def knapsack_plan(text: str, choice_symbols: Sequence[str]) -> Plan:
    """The winning existential bits of the instance, given the coins."""
    try:
        instance = parse_instance(text)
    except MalformedInstanceError:
        return lambda coins, choices: ()

    def plan(coins: tuple[int, ...], choices: Optional[tuple[int, ...]]) -> tuple[str, ...]:
        return tuple(choice_symbols[bit] for bit in play(instance, coins, choices))

    return plan


def reduction_plan(machine: TuringMachineSpec, word: str) -> Plan:
    """
    The reduction's stream with the game bits woven in.

    The bit for an existential pair follows the # of the configuration
    whose state emits E; the plan ends where a bit depends on an unseen coin.
    """
    stream = honest_stream(machine, word, MAX_PLAN_STEPS)
    output = "".join(
        machine.output_of(config.state) or "" for config in stream
    )
    game = knapsack_plan(output, CHOICE_SYMBOLS)

    def plan(coins: tuple[int, ...], choices: Optional[tuple[int, ...]]) -> tuple[str, ...]:
        bits = list(game(coins, choices))
        tokens: list[str] = []
        for config in stream:
            tokens.extend((*config.symbols, SEPARATOR))
            if machine.output_of(config.state) == EXISTENTIAL:
                if not bits:
                    break
                tokens.append(bits.pop(0))
        return tuple(tokens)

    return plan


def stream_plan(machine: TuringMachineSpec, word: str) -> Plan:
    if machine.flavor is Flavor.ALTERNATING:
        return alternating_plan(machine, word)
    if machine.outputs:
        return reduction_plan(machine, word)
    return deterministic_plan(machine, word)


class KnapsackProver(PlannedProver):
    """Plays the winning existential choices of the instance on the tape."""

    def __init__(
        self,
        word: str,
        coin_register: int,
        choice_symbols: Sequence[str] = ("0", "1"),
    ):
        symbols = tuple(choice_symbols)
        super().__init__(knapsack_plan(word, symbols), coin_register, symbols[0])
