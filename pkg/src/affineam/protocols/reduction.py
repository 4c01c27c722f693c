"""
Verifier for a reduction to the knapsack game.

The reduction machine's configuration stream is checked with the
linear-length walk, and the symbol each output state emits is fed to the
knapsack-game check running on its own registers. A round accepts only if
the stream reaches q_a and the game check accepts.
"""

from fractions import Fraction
from typing import Optional

from affineam.algebra.rational import RationalInput
from affineam.errors import FlavorError, OutputConventionError
from affineam.protocols.instances import KG_ALPHABET, kg_member
from affineam.protocols.knapsack import KnapsackLogic
from affineam.protocols.models import (
    ASK_BIT,
    CHOICE_SYMBOLS,
    SEPARATOR,
    ProtocolBundle,
    check_epsilon,
)
from affineam.protocols.provers import PlannedMoves, PlannedProver, stream_plan
from affineam.protocols.tm_stream import StreamController, check_stream_machine, stream_verifier
from affineam.turing import Flavor, TuringMachineSpec, honest_stream


def check_output_convention(machine: TuringMachineSpec) -> None:
    """
    Raises:
        FlavorError: For alternating machines
        OutputConventionError: If an output symbol is outside the instance
            alphabet, an output state is halting, or a transition enters q_r
    """
    if machine.flavor is not Flavor.DETERMINISTIC:
        raise FlavorError(f"reduction machine {machine.name} must be deterministic")
    if not machine.outputs:
        raise OutputConventionError(f"{machine.name} has no output states")
    for state, symbol in machine.outputs.items():
        if symbol not in KG_ALPHABET:
            raise OutputConventionError(f"output state {state} emits {symbol!r}")
        if machine.is_halting(state):
            raise OutputConventionError(f"halting state {state} emits output")
    for (state, symbol), actions in machine.transitions.items():
        if any(action.state == machine.reject for action in actions):
            raise OutputConventionError(f"delta({state}, {symbol}) enters {machine.reject}")


def output_of_run(machine: TuringMachineSpec, word: str) -> Optional[str]:
    """The instance the reduction writes on ``word``, or None if the run does not accept."""
    stream = honest_stream(machine, word)
    if stream.truncated or stream.last.state != machine.accept:
        return None
    return "".join(machine.output_of(config.state) or "" for config in stream)


def reduction_member(machine: TuringMachineSpec, word: str) -> bool:
    instance = output_of_run(machine, word)
    return instance is not None and kg_member(instance)


def build_reduction(
    machine: TuringMachineSpec, epsilon: RationalInput = Fraction(1, 3)
) -> ProtocolBundle:
    """
    Raises:
        EpsilonRangeError: If epsilon is not in (0, 1/2)
        FlavorError: For alternating machines
        OutputConventionError: If the machine breaks the output convention
    """
    eps = check_epsilon(epsilon)
    check_output_convention(machine)
    check_stream_machine(machine)
    logic = KnapsackLogic(eps, CHOICE_SYMBOLS)
    controller = StreamController(machine, eps, head_mode="length", knapsack=logic)
    coin = controller.register_index("coin")

    return ProtocolBundle(
        name="reduction",
        verifier=stream_verifier("reduction", controller),
        honest=lambda word: PlannedProver(stream_plan(machine, word), coin, SEPARATOR),
        oracle=lambda word: reduction_member(machine, word),
        epsilon=eps,
        alphabet=machine.input_alphabet,
        round_structured=True,
        moves=lambda word: PlannedMoves(
            stream_plan(machine, word), coin, ASK_BIT, CHOICE_SYMBOLS, SEPARATOR
        ),
        horizon_for=lambda word: 400 + 60 * (len(word) + 5) ** 2,
        parameters={
            "machine": machine.name,
            "C": controller.amplification,
            "base": controller.base,
            "delta": logic.delta,
        },
        notes=(
            "the game oracle applies to the instance the machine writes; "
            "a non-member instance gives a stream that passes and a game that fails",
        ),
    )
