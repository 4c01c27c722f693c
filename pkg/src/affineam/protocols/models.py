"""
Protocol bundles.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

from affineam.algebra.rational import RationalInput, as_rational
from affineam.engine import Prover, ProverMoves
from affineam.errors import EpsilonRangeError
from affineam.machine import VerifierSpec

HALF = Fraction(1, 2)

# request symbols written by communication states
ASK_MIDDLE = "middle?"
ASK_SYMBOL = "next"
ASK_CHOICE = "choose"
ASK_BIT = "bit"

YES = "yes"
NO = "no"
SEPARATOR = "#"
CHOICE_SYMBOLS = ("<0>", "<1>")


def check_epsilon(epsilon: RationalInput, closed: bool = False) -> Fraction:
    """
    The error bound as an exact rational.

    Args:
        epsilon: The bound
        closed: Also admit 1/2 (standalone continuation checks)

    Raises:
        EpsilonRangeError: If epsilon is not in (0, 1/2), or (0, 1/2] when closed
    """
    try:
        value = as_rational(epsilon)
    except (TypeError, ValueError, ZeroDivisionError):
        raise EpsilonRangeError(epsilon, closed) from None
    if not (0 < value <= HALF if closed else 0 < value < HALF):
        raise EpsilonRangeError(value, closed)
    return value


@dataclass(frozen=True)
class ProtocolBundle:
    """
    Everything needed to run one protocol.

    Attributes:
        name: Catalog name
        verifier: The verifier
        honest: Factory for the honest prover of an input word
        oracle: Reference membership decider
        epsilon: Declared error bound
        alphabet: Input alphabet
        round_structured: True when rounds end in Restart leaves
        moves: Optional factory for restricted worst-case replies
        horizon_for: Transition bound that lets honest runs finish
        parameters: Derived constants, for reports and inspection
        notes: Free-form remarks on deviations
    """

    name: str
    verifier: VerifierSpec
    honest: Callable[[str], Prover]
    oracle: Callable[[str], bool]
    epsilon: Fraction
    alphabet: tuple[str, ...]
    round_structured: bool = False
    moves: Optional[Callable[[str], ProverMoves]] = None
    horizon_for: Callable[[str], int] = lambda word: 1000
    parameters: dict[str, Any] = field(default_factory=dict, hash=False)
    notes: tuple[str, ...] = ()

    def honest_prover(self, word: str) -> Prover:
        return self.honest(word)

    def is_member(self, word: str) -> bool:
        return self.oracle(word)

    def moves_for(self, word: str) -> Optional[ProverMoves]:
        return self.moves(word) if self.moves is not None else None
