"""
Knapsack-game instances and the game they describe.

An instance ``S A a,b E e,f ...`` (binary numbers, no spaces) is won by the
existential player when S equals the sum of the chosen numbers, where the
universal player picks from each A pair and the existential player from
each E pair, in order, each seeing every earlier choice.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Optional, Sequence

from affineam.errors import MalformedInstanceError

UNIVERSAL = "A"
EXISTENTIAL = "E"
COMMA = ","
KG_ALPHABET = ("0", "1", UNIVERSAL, EXISTENTIAL, COMMA)

Quantifier = Literal["A", "E"]


@dataclass(frozen=True)
class QuantifierPair:
    kind: Quantifier
    first: int
    second: int

    def pick(self, choice: int) -> int:
        return self.second if choice else self.first


@dataclass(frozen=True)
class KnapsackInstance:
    """
    Attributes:
        target: S
        pairs: Quantifier pairs in play order
    """

    target: int
    pairs: tuple[QuantifierPair, ...] = ()

    @property
    def text(self) -> str:
        parts = [format(self.target, "b")]
        for pair in self.pairs:
            parts.append(f"{pair.kind}{pair.first:b},{pair.second:b}")
        return "".join(parts)

    def __len__(self) -> int:
        return len(self.pairs)


def parse_instance(text: str) -> KnapsackInstance:
    """
    Parse ``S A a,b E e,f ...``.

    Raises:
        MalformedInstanceError: With the position of the first bad symbol
    """
    position = 0

    def number() -> int:
        nonlocal position
        start = position
        while position < len(text) and text[position] in "01":
            position += 1
        if position == start:
            raise MalformedInstanceError(f"expected a binary number at {start}", position=start)
        return int(text[start:position], 2)

    target = number()
    pairs = []
    while position < len(text):
        kind = text[position]
        if kind not in (UNIVERSAL, EXISTENTIAL):
            raise MalformedInstanceError(f"unexpected {kind!r} at {position}", position=position)
        position += 1
        first = number()
        if position >= len(text) or text[position] != COMMA:
            raise MalformedInstanceError(f"expected ',' at {position}", position=position)
        position += 1
        pairs.append(QuantifierPair(kind, first, number()))
    return KnapsackInstance(target, tuple(pairs))


def game_value(instance: KnapsackInstance) -> bool:
    """True when the existential player has a winning strategy."""
    return _wins(instance, 0, instance.target)


def _wins(instance: KnapsackInstance, index: int, remaining: int) -> bool:
    if index == len(instance.pairs):
        return remaining == 0
    pair = instance.pairs[index]
    outcomes = (_wins(instance, index + 1, remaining - pair.pick(c)) for c in (0, 1))
    return all(outcomes) if pair.kind == UNIVERSAL else any(outcomes)


def winning_choice(instance: KnapsackInstance, index: int, remaining: int) -> int:
    """Existential choice at pair ``index`` that keeps the game won; 0 if none does."""
    pair = instance.pairs[index]
    for choice in (0, 1):
        if _wins(instance, index + 1, remaining - pair.pick(choice)):
            return choice
    return 0


def play(
    instance: KnapsackInstance,
    coins: Sequence[int],
    choices: Optional[Sequence[int]] = None,
) -> list[int]:
    """
    Existential choices of a play, in order.

    Universal pairs take the next coin; existential pairs take the next
    entry of ``choices`` or, when it runs out or is None, the winning
    choice. Stops early (returns what it has) at a universal pair whose
    coin is not known yet.
    """
    remaining = instance.target
    coins = list(coins)
    given = list(choices) if choices is not None else []
    picked: list[int] = []
    for index, pair in enumerate(instance.pairs):
        if pair.kind == UNIVERSAL:
            if not coins:
                return picked
            choice = coins.pop(0)
        else:
            choice = given.pop(0) if given else winning_choice(instance, index, remaining)
            picked.append(choice)
        remaining -= pair.pick(choice)
    return picked


@lru_cache(maxsize=4096)
def kg_member(text: str) -> bool:
    """Membership in L_KG; malformed text is a non-member."""
    try:
        return game_value(parse_instance(text))
    except MalformedInstanceError:
        return False


