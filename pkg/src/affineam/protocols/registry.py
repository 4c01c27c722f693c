"""
Protocol catalog: builds a bundle from a name and its parameters.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from affineam.algebra.rational import RationalInput
from affineam.protocols.atm import build_atm
from affineam.protocols.continuation import Case, Gadget
from affineam.protocols.knapsack import build_kg
from affineam.protocols.middle import Reading, build_middle
from affineam.protocols.models import ProtocolBundle
from affineam.protocols.mpal import build_mpal
from affineam.protocols.reduction import build_reduction
from affineam.protocols.weak import build_weak_tm, with_continuation_check
from affineam.turing import TuringMachineSpec, get_machine

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ContinuationOptions:
    """Declared budget of a continuation check."""

    case: Case = "polynomial"
    k: int = 3
    c: int = 16
    gadget: Gadget = "calibrated"


@dataclass(frozen=True)
class ProtocolRequest:
    """
    Parameters of one protocol build.

    Attributes:
        name: Catalog name
        epsilon: Error bound
        alphabet: Input alphabet (middle, mpal)
        marked: Marked middle symbol (middle)
        reading: "marked" or "existential" (middle, mpal)
        machine: Turing machine (stream protocols); catalog default if None
        continuation: Budget of the continuation check
        word_length: Longest input, for the continuation budget assertion
    """

    name: str
    epsilon: RationalInput = Fraction(1, 3)
    alphabet: Optional[tuple[str, ...]] = None
    marked: Optional[str] = None
    reading: Reading = "marked"
    machine: Optional[TuringMachineSpec] = None
    continuation: ContinuationOptions = ContinuationOptions()
    word_length: int = 1


DEFAULT_MACHINES = {
    "weak-tm": "equal-blocks",
    "continuation": "equal-blocks",
    "atm": "ones-at-both-ends",
    "reduction": "contains-one-reduction",
}

DESCRIPTIONS = {
    "middle": "one-way, one 3-state register: odd words with a marked middle symbol",
    "mpal": "one-way, one (n+2)-state register: marked palindromes x$x^R",
    "weak-tm": "two-way, two 4-state registers: deterministic machine, weak verification",
    "continuation": "weak-tm plus a continuation check for a declared time budget",
    "atm": "two-way, restart-on-accept: alternating machine, public coins for universal steps",
    "kg": "two-way, round-structured: the knapsack game",
    "reduction": "two-way: reduction machine stream plus the knapsack-game check",
}


def _middle(request: ProtocolRequest) -> ProtocolBundle:
    alphabet = request.alphabet or ("0", "1")
    return build_middle(request.epsilon, alphabet, request.marked or alphabet[-1], request.reading)


def _mpal(request: ProtocolRequest) -> ProtocolBundle:
    return build_mpal(request.alphabet or ("a", "b"), request.epsilon, request.reading)


def _weak(request: ProtocolRequest) -> ProtocolBundle:
    return build_weak_tm(_machine(request), request.epsilon)


def _continuation(request: ProtocolRequest) -> ProtocolBundle:
    machine = _machine(request)
    options = request.continuation
    return with_continuation_check(
        build_weak_tm(machine, request.epsilon),
        machine,
        options.case,
        options.k,
        options.c,
        request.epsilon,
        request.word_length,
        options.gadget,
    )


def _atm(request: ProtocolRequest) -> ProtocolBundle:
    return build_atm(_machine(request), request.epsilon)


def _kg(request: ProtocolRequest) -> ProtocolBundle:
    return build_kg(request.epsilon)


def _reduction(request: ProtocolRequest) -> ProtocolBundle:
    return build_reduction(_machine(request), request.epsilon)


def _machine(request: ProtocolRequest) -> TuringMachineSpec:
    if request.machine is not None:
        return request.machine
    return get_machine(DEFAULT_MACHINES[request.name])


_BUILDERS: dict[str, Callable[[ProtocolRequest], ProtocolBundle]] = {
    "middle": _middle,
    "mpal": _mpal,
    "weak-tm": _weak,
    "continuation": _continuation,
    "atm": _atm,
    "kg": _kg,
    "reduction": _reduction,
}

PROTOCOL_NAMES = tuple(_BUILDERS)


def build_protocol(request: ProtocolRequest) -> ProtocolBundle:
    """
    Raises:
        KeyError: For an unknown protocol name
        ProtocolError: From the builder (epsilon range, budget, conventions)
        TuringError: If the machine does not fit the protocol
    """
    try:
        builder = _BUILDERS[request.name]
    except KeyError:
        raise KeyError(
            f"no protocol named {request.name!r}; choose from {', '.join(PROTOCOL_NAMES)}"
        ) from None
    bundle = builder(request)
    logger.info("built %s with epsilon=%s", bundle.name, bundle.epsilon)
    return bundle


def uses_machine(name: str) -> bool:
    return name in DEFAULT_MACHINES
