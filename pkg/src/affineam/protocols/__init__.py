"""
Protocol builders: verifier, honest prover and membership oracle per language.
"""

from affineam.protocols.atm import build_atm
from affineam.protocols.claims import ClaimLayout, middle_of
from affineam.protocols.continuation import (
    ContinuationCheck,
    exponential_check,
    make_check,
    polynomial_check,
)
from affineam.protocols.instances import (
    KG_ALPHABET,
    KnapsackInstance,
    QuantifierPair,
    game_value,
    kg_member,
    parse_instance,
    play,
)
from affineam.protocols.knapsack import KnapsackLogic, build_kg
from affineam.protocols.middle import build_middle, middle_layout
from affineam.protocols.models import (
    CHOICE_SYMBOLS,
    SEPARATOR,
    ProtocolBundle,
    check_epsilon,
)
from affineam.protocols.mpal import build_mpal, mpal_layout, residual
from affineam.protocols.provers import (
    KnapsackProver,
    MiddleClaimProver,
    PlannedMoves,
    PlannedProver,
    stream_plan,
)
from affineam.protocols.reduction import build_reduction, check_output_convention
from affineam.protocols.registry import (
    DESCRIPTIONS,
    PROTOCOL_NAMES,
    ContinuationOptions,
    ProtocolRequest,
    build_protocol,
    uses_machine,
)
from affineam.protocols.tm_stream import RestartRule, StreamController, StreamState
from affineam.protocols.weak import build_weak_tm, with_continuation_check

__all__ = [
    "CHOICE_SYMBOLS",
    "DESCRIPTIONS",
    "KG_ALPHABET",
    "PROTOCOL_NAMES",
    "SEPARATOR",
    "ClaimLayout",
    "ContinuationCheck",
    "ContinuationOptions",
    "KnapsackInstance",
    "KnapsackLogic",
    "KnapsackProver",
    "MiddleClaimProver",
    "PlannedMoves",
    "PlannedProver",
    "ProtocolBundle",
    "ProtocolRequest",
    "QuantifierPair",
    "RestartRule",
    "StreamController",
    "StreamState",
    "build_atm",
    "build_kg",
    "build_middle",
    "build_mpal",
    "build_protocol",
    "build_reduction",
    "build_weak_tm",
    "check_epsilon",
    "check_output_convention",
    "exponential_check",
    "game_value",
    "kg_member",
    "make_check",
    "middle_layout",
    "middle_of",
    "mpal_layout",
    "parse_instance",
    "play",
    "polynomial_check",
    "residual",
    "stream_plan",
    "uses_machine",
    "with_continuation_check",
]
