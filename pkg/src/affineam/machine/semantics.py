"""
Single-step semantics of one-way and two-way verifiers.

A tape step first runs the affine part (one action per register) and then the
deterministic part, which sees the weighting outcomes. A communication state
instead performs an exchange: it emits its query symbol, consumes the prover's
reply and moves by the reply map, without touching the head or the registers.
"""

from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from affineam.algebra import AffineState, apply, basis_state, weight
from affineam.errors import (
    HeadBoundsError,
    InvalidReplySymbolError,
    MachineError,
    MissingReplyError,
    MissingTransitionError,
    ModeError,
)
from affineam.machine.models import (
    IDENTITY,
    WEIGHT,
    Branch,
    BranchSet,
    MachineConfiguration,
    Mode,
    Outcome,
    RegisterSpec,
    VerifierSpec,
)

ONE = Fraction(1)


def initial_configuration(spec: VerifierSpec) -> MachineConfiguration:
    """s_I at the left end-marker with every register in e_1."""
    return MachineConfiguration(
        state=spec.initial,
        head=0,
        registers=tuple(basis_state(reg.dimension) for reg in spec.registers),
    )


def step(
    spec: VerifierSpec,
    cfg: MachineConfiguration,
    tape: Sequence[str],
    reply: Optional[str] = None,
) -> BranchSet:
    """
    Successors of one transition, each with its exact probability.

    Args:
        spec: The verifier
        cfg: Current, non-halted configuration
        tape: Padded input (see ``pad``)
        reply: Prover reply; required exactly when cfg.state is a communication state

    Returns:
        Branches with nonzero probability, summing to 1

    Raises:
        MissingReplyError: A communication state got no reply
        InvalidReplySymbolError: The reply is not in the communication alphabet
        HeadBoundsError: A two-way head left the padded input
    """
    two_way = spec.mode is Mode.TWO_WAY
    if two_way and spec.outcome_of(cfg.state) is not None:
        raise MachineError(f"configuration in halting state {cfg.state!r} has no successor")

    if spec.is_communication(cfg.state):
        if reply is None:
            raise MissingReplyError(cfg.state)
        if reply not in spec.comm_alphabet:
            raise InvalidReplySymbolError(reply, spec.comm_alphabet)
        target = spec.table.on_reply(cfg.state, reply)
        successor = MachineConfiguration(
            state=target,
            head=cfg.head,
            registers=cfg.registers,
            steps=cfg.steps,
            exchanges=cfg.exchanges + 1,
        )
        outcome = spec.outcome_of(target) if two_way else None
        return (Branch(ONE, successor, outcome, (0,) * len(spec.registers)),)

    if reply is not None:
        raise MachineError(f"state {cfg.state!r} does not talk to the prover")
    return _tape_step(spec, cfg, tape, two_way)


def final_weighting(spec: VerifierSpec, cfg: MachineConfiguration) -> BranchSet:
    """
    The single weighting of a one-way verifier after the right end-marker.

    Accepts on the branches where every register lands in its accepting set.

    Raises:
        ModeError: If the verifier is two-way
    """
    if spec.mode is not Mode.ONE_WAY:
        raise ModeError("final weighting only exists for one-way verifiers")
    if spec.outcome_of(cfg.state) is not Outcome.ACCEPT:
        raise ModeError(f"final weighting from non-accepting state {cfg.state!r}")

    supports = [weight(v).support() for v in cfg.registers]
    branches = []
    for combo in product(*supports):
        probability = ONE
        for _, p in combo:
            probability *= p
        taus = tuple(tau for tau, _ in combo)
        registers = tuple(
            basis_state(reg.dimension, tau) for reg, tau in zip(spec.registers, taus)
        )
        accepted = all(tau in reg.accepting for reg, tau in zip(spec.registers, taus))
        successor = MachineConfiguration(
            state=cfg.state,
            head=cfg.head,
            registers=registers,
            steps=cfg.steps,
            exchanges=cfg.exchanges,
        )
        branches.append(
            Branch(probability, successor, Outcome.ACCEPT if accepted else Outcome.REJECT, taus)
        )
    return tuple(branches)


def _tape_step(
    spec: VerifierSpec, cfg: MachineConfiguration, tape: Sequence[str], two_way: bool
) -> BranchSet:
    length = len(tape) - 2
    symbol = tape[cfg.head]
    actions = spec.table.affine(cfg.state, symbol)
    if len(actions) != len(spec.registers):
        raise MachineError(
            f"affine transition at ({cfg.state!r}, {symbol!r}) has {len(actions)} actions "
            f"for {len(spec.registers)} registers"
        )

    # (probability, registers, taus) after the affine part
    partial: list[tuple[Fraction, tuple[AffineState, ...], tuple[int, ...]]] = [(ONE, (), ())]
    for reg, action, v in zip(spec.registers, actions, cfg.registers):
        choices = _register_choices(reg, action, v, two_way)
        partial = [
            (p * q, regs + (w,), taus + (tau,))
            for p, regs, taus in partial
            for q, w, tau in choices
        ]

    branches: list[Branch] = []
    for probability, registers, taus in partial:
        target, move = spec.table.classical(cfg.state, symbol, taus)
        if two_way:
            head = cfg.head + move
            if not 0 <= head <= length + 1:
                raise HeadBoundsError(head, length)
            successor = MachineConfiguration(
                target, head, registers, cfg.steps + 1, cfg.exchanges
            )
            branches.append(Branch(probability, successor, spec.outcome_of(target), taus))
            continue

        if move != 1:
            raise ModeError(f"one-way verifier moved its head by {move}")
        if cfg.head <= length:
            successor = MachineConfiguration(
                target, cfg.head + 1, registers, cfg.steps + 1, cfg.exchanges
            )
            branches.append(Branch(probability, successor, None, taus))
            continue

        # the right end-marker was consumed
        successor = MachineConfiguration(target, cfg.head, registers, cfg.steps + 1, cfg.exchanges)
        if spec.outcome_of(target) is Outcome.ACCEPT:
            for leaf in final_weighting(spec, successor):
                branches.append(
                    Branch(
                        probability * leaf.probability,
                        leaf.configuration,
                        leaf.outcome,
                        leaf.taus,
                    )
                )
        else:
            branches.append(Branch(probability, successor, Outcome.REJECT, taus))
    return tuple(branches)


def _register_choices(
    reg: RegisterSpec, action: str, v: AffineState, two_way: bool
) -> list[tuple[Fraction, AffineState, int]]:
    if action == IDENTITY:
        return [(ONE, v, 0)]
    if action == WEIGHT:
        if not two_way:
            raise ModeError("one-way verifiers weight only after the right end-marker")
        return [(p, basis_state(v.dimension, tau), tau) for tau, p in weight(v).support()]
    try:
        op = reg.operators[action]
    except KeyError:
        raise MissingTransitionError(
            f"register {reg.name!r} has no operator {action!r}", symbol=action
        ) from None
    return [(ONE, apply(op, v), 0)]
