"""
Turing-machine verifiers for deterministic machines: the weak stream
protocol and the variant with a continuation check.
"""

import logging
from dataclasses import replace
from fractions import Fraction

from affineam.algebra.rational import RationalInput
from affineam.errors import DegenerateInputError, FlavorError
from affineam.protocols.continuation import Case, Gadget, make_check
from affineam.protocols.models import SEPARATOR, ProtocolBundle, check_epsilon
from affineam.protocols.provers import PlannedProver, stream_plan
from affineam.protocols.tm_stream import StreamController, check_stream_machine, stream_verifier
from affineam.turing import Flavor, TuringMachineSpec, run

logger = logging.getLogger(__name__)


def _stream_horizon(word: str) -> int:
    return 1000 + 40 * (len(word) + 5) ** 2


def build_weak_tm(
    machine: TuringMachineSpec, epsilon: RationalInput = Fraction(1, 3)
) -> ProtocolBundle:
    """
    Stream verifier for a deterministic machine; the head idles at the
    right end-marker once c_0 is checked.

    Members are accepted with probability 1. A non-member is rejected with
    probability at least 1 - epsilon by every prover that eventually stops
    sending, while a prover that never stops keeps the verifier running.

    Raises:
        EpsilonRangeError: If epsilon is not in (0, 1/2)
        FlavorError: For alternating machines
        TuringError: If the machine is malformed
    """
    eps = check_epsilon(epsilon)
    if machine.flavor is not Flavor.DETERMINISTIC:
        raise FlavorError(f"{machine.name} is alternating; use the alternating protocol")
    check_stream_machine(machine)
    controller = StreamController(machine, eps)
    return ProtocolBundle(
        name="weak-tm",
        verifier=stream_verifier("weak-tm", controller),
        honest=lambda word: PlannedProver(stream_plan(machine, word), None, SEPARATOR),
        oracle=lambda word: bool(run(machine, word)),
        epsilon=eps,
        alphabet=machine.input_alphabet,
        horizon_for=_stream_horizon,
        parameters={
            "machine": machine.name,
            "C": controller.amplification,
            "base": controller.base,
        },
    )


def with_continuation_check(
    bundle: ProtocolBundle,
    machine: TuringMachineSpec,
    case: Case,
    k: int,
    c: int,
    epsilon: RationalInput,
    word_length: int,
    gadget: Gadget = "literal",
) -> ProtocolBundle:
    """
    The weak stream verifier plus a continuation check for a machine whose
    runs fit the budget c |w|^k (polynomial) or c 2^{k|w|} (exponential).

    The completeness bound is checked for ``word_length`` before the
    verifier is built.

    Raises:
        DegenerateInputError: If word_length is 0
        BudgetError: If honest runs within the budget are cut off with
            probability above epsilon
    """
    eps = check_epsilon(epsilon)
    if word_length < 1:
        raise DegenerateInputError("the continuation check needs |w| >= 1")
    check = make_check(case, k, c, eps, gadget)
    false_reject = check.assert_budget(word_length)
    controller = StreamController(machine, eps, head_mode="scan", check=check)
    notes: tuple[str, ...] = ()
    if case == "polynomial":
        notes = (
            "the polynomial register has k+2 states: 1, x, ..., x^(k-1), a spare entry "
            "and the balance",
        )
    logger.info(
        "continuation check %s/%s: p=%s, false reject %s at |w|=%d",
        case,
        gadget,
        check.realized_p(word_length),
        false_reject,
        word_length,
    )
    return replace(
        bundle,
        name="continuation",
        verifier=stream_verifier("continuation", controller),
        horizon_for=lambda word: _stream_horizon(word) * 4,
        parameters={
            **bundle.parameters,
            "case": case,
            "gadget": gadget,
            "k": k,
            "c": c,
            "m": check.m,
            "p": check.realized_p(word_length),
            "closed_form_p": check.closed_form(word_length),
            "deviation": check.deviation(word_length),
            "checks": check.checks(word_length),
            "false_reject": false_reject,
            "check": check,
        },
        notes=bundle.notes + notes,
    )
