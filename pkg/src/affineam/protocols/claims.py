"""
One-way verifiers that ask the prover where the middle of the input is.

Before the claimed middle the register is driven by one operator per
symbol; after it by the inverses, so the product is the identity exactly
when both halves mirror each other. A final operator at the end-marker
amplifies whatever is left away from e_1.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from affineam.algebra import AffineOperator, AffineState, apply, basis_state, weight
from affineam.machine import (
    IDENTITY,
    LEFT_MARKER,
    RIGHT_MARKER,
    ExplicitTable,
    Mode,
    RegisterSpec,
    VerifierSpec,
)
from affineam.protocols.models import ASK_MIDDLE, NO, YES

logger = logging.getLogger(__name__)

START = "start"
ASK = "ask"
BEFORE = "before"
CLAIM = "claim"
ASK_AFTER = "ask-after"
AFTER = "after"
DEAD = "dead"
FINAL = "final"

LABELS = {
    START: "on the left end-marker",
    ASK: "ask whether the next symbol is the middle",
    BEFORE: "first half",
    CLAIM: "check the claimed middle symbol",
    ASK_AFTER: "ask again; any further yes rejects",
    AFTER: "second half",
    DEAD: "deterministic rejection",
    FINAL: "weigh at the end-marker",
}


@dataclass(frozen=True)
class ClaimLayout:
    """
    Operators of a middle-claim verifier.

    Attributes:
        alphabet: Input alphabet of the verifier
        dimension: Register size
        before: Operator per symbol before the middle; symbols without one
            may only appear as the middle
        after: Operator per symbol after the middle
        final: Operator applied on the right end-marker
        claimable: Symbols accepted as the middle
    """

    alphabet: tuple[str, ...]
    dimension: int
    before: dict[str, AffineOperator]
    after: dict[str, AffineOperator]
    final: AffineOperator
    claimable: frozenset[str]

    def pre_final_state(self, word: Sequence[str], position: int) -> Optional[AffineState]:
        """
        Register just before the final operator for a claim at ``position``
        (1-based), or None when the claim is rejected deterministically.
        """
        if not 1 <= position <= len(word) or word[position - 1] not in self.claimable:
            return None
        state = basis_state(self.dimension)
        for index, symbol in enumerate(word, start=1):
            if index == position:
                continue
            table = self.before if index < position else self.after
            if symbol not in table:
                return None
            state = apply(table[symbol], state)
        return state

    def acceptance(self, word: Sequence[str], position: int) -> Fraction:
        """Acceptance probability when the prover claims ``position``."""
        state = self.pre_final_state(word, position)
        if state is None:
            return Fraction(0)
        return weight(apply(self.final, state)).outcome(1)

    def best_claim(self, word: Sequence[str]) -> Fraction:
        """Acceptance of the best claim; 0 when no claim survives."""
        return max(
            (self.acceptance(word, position) for position in range(1, len(word) + 1)),
            default=Fraction(0),
        )

    def verifier(self, name: str) -> VerifierSpec:
        operators = {op.name: op for op in (*self.before.values(), *self.after.values())}
        operators[self.final.name] = self.final
        affine: dict = {}
        classical: dict = {}

        def rule(state: str, symbol: str, action: str, target: str) -> None:
            affine[(state, symbol)] = (action,)
            classical[(state, symbol, (0,))] = (target, 1)

        tape = (LEFT_MARKER, *self.alphabet, RIGHT_MARKER)
        for symbol in tape:
            for state in (START, BEFORE, CLAIM, AFTER, DEAD, FINAL):
                rule(state, symbol, IDENTITY, DEAD)
        rule(START, LEFT_MARKER, IDENTITY, ASK)
        for symbol in self.alphabet:
            if symbol in self.before:
                rule(BEFORE, symbol, self.before[symbol].name, ASK)
            if symbol in self.after:
                rule(AFTER, symbol, self.after[symbol].name, ASK_AFTER)
            if symbol in self.claimable:
                rule(CLAIM, symbol, IDENTITY, ASK_AFTER)
        rule(AFTER, RIGHT_MARKER, self.final.name, FINAL)

        table = ExplicitTable(
            initial=START,
            states=(START, ASK, BEFORE, CLAIM, ASK_AFTER, AFTER, DEAD, FINAL),
            accepting=frozenset({FINAL}),
            affine_map=affine,
            classical_map=classical,
            write_map={ASK: ASK_MIDDLE, ASK_AFTER: ASK_MIDDLE},
            reply_map={
                (ASK, YES): CLAIM,
                (ASK, NO): BEFORE,
                (ASK_AFTER, YES): DEAD,
                (ASK_AFTER, NO): AFTER,
            },
            labels=dict(LABELS),
        )
        logger.debug("%s: %d operators, %d transitions", name, len(operators), len(classical))
        return VerifierSpec(
            name=name,
            mode=Mode.ONE_WAY,
            alphabet=self.alphabet,
            comm_alphabet=(YES, NO),
            registers=(RegisterSpec("r", self.dimension, operators),),
            table=table,
        )


def middle_of(word: Sequence[str]) -> Optional[int]:
    """1-based middle position of an odd-length word."""
    return (len(word) + 1) // 2 if len(word) % 2 == 1 else None
