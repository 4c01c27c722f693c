"""
Round-structured verifier for alternating machines.

The configuration stream is checked as for deterministic machines, with
two changes inside each block: a universal state is answered by a public
coin and an existential state by a prover choice, and the branch taken
decides which successor the other register accumulates. A restart register
is halved on every prover symbol and scaled by delta on the accepting
configuration, so a round that reaches q_a accepts only with a small
probability and restarts otherwise.
"""

from fractions import Fraction
from typing import Optional

from affineam.algebra.rational import RationalInput, as_rational
from affineam.errors import FlavorError
from affineam.protocols.models import (
    ASK_CHOICE,
    CHOICE_SYMBOLS,
    HALF,
    SEPARATOR,
    ProtocolBundle,
    check_epsilon,
)
from affineam.protocols.provers import PlannedMoves, PlannedProver, stream_plan
from affineam.protocols.tm_stream import (
    RestartRule,
    StreamController,
    check_stream_machine,
    stream_verifier,
)
from affineam.turing import Flavor, TuringMachineSpec, evaluate_alternating, normalize_alternating


def build_atm(
    machine: TuringMachineSpec,
    epsilon: RationalInput = Fraction(1, 3),
    ratio: RationalInput = HALF,
    delta: Optional[RationalInput] = None,
) -> ProtocolBundle:
    """
    Args:
        machine: Alternating machine; normalized before use
        epsilon: Error bound
        ratio: Restart register factor per prover symbol
        delta: Restart register factor on q_a (default epsilon)

    Raises:
        EpsilonRangeError: If epsilon is not in (0, 1/2)
        FlavorError: For deterministic machines
        AlternationError: If the machine cannot be normalized
    """
    eps = check_epsilon(epsilon)
    if machine.flavor is not Flavor.ALTERNATING:
        raise FlavorError(f"{machine.name} is deterministic; use the weak protocol")
    machine = normalize_alternating(machine)
    check_stream_machine(machine)
    rule = RestartRule(
        ratio=as_rational(ratio), delta=eps if delta is None else as_rational(delta)
    )
    controller = StreamController(machine, eps, head_mode="length", restart=rule)
    coin = controller.register_index("coin")

    return ProtocolBundle(
        name="atm",
        verifier=stream_verifier("atm", controller),
        honest=lambda word: PlannedProver(stream_plan(machine, word), coin, SEPARATOR),
        oracle=lambda word: evaluate_alternating(machine, word),
        epsilon=eps,
        alphabet=machine.input_alphabet,
        round_structured=True,
        moves=lambda word: PlannedMoves(
            stream_plan(machine, word), coin, ASK_CHOICE, CHOICE_SYMBOLS, SEPARATOR
        ),
        horizon_for=lambda word: 400 + 60 * (len(word) + 5) ** 2,
        parameters={
            "machine": machine.name,
            "C": controller.amplification,
            "base": controller.base,
            "restart_ratio": rule.ratio,
            "restart_delta": rule.delta,
        },
    )
