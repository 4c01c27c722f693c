"""
Exact evaluation against a fixed prover.

The game tree is expanded one transition per level. Nodes with the same
configuration and the same prover view are merged by adding their
probabilities, so the frontier stays small for provers that only look at
where the verifier is.
"""

import logging
from fractions import Fraction
from typing import Hashable, Sequence

from affineam.engine.expansion import advance, answer, open_query, restart
from affineam.engine.models import EvalResult, ProverStrategy
from affineam.errors import BranchExplosionError
from affineam.machine import (
    MachineConfiguration,
    Outcome,
    Transcript,
    VerifierSpec,
    initial_configuration,
    pad,
)

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)
DEFAULT_NODE_CAP = 200_000


def evaluate_exact(
    spec: VerifierSpec,
    word: Sequence[str],
    prover: ProverStrategy,
    horizon: int,
    node_cap: int = DEFAULT_NODE_CAP,
    dedup: bool = True,
    unroll_restarts: bool = False,
) -> EvalResult:
    """
    Exact outcome probabilities up to ``horizon`` transitions.

    Args:
        spec: The verifier
        word: Input without end-markers
        prover: Deterministic prover; gets the transcript ending with each query
        horizon: Maximum number of transitions (tape steps plus exchanges)
        node_cap: Maximum live frontier size
        dedup: Merge nodes with equal configuration and prover view
        unroll_restarts: Re-enter the initial configuration at Restart leaves
            instead of stopping there

    Raises:
        BranchExplosionError: If the frontier outgrows ``node_cap``
    """
    tape = pad(word)
    view = getattr(prover, "view", None) if dedup else None

    def merge_key(cfg: MachineConfiguration, transcript: Transcript) -> Hashable:
        return (cfg.key, view(transcript) if view is not None else transcript)

    start = initial_configuration(spec)
    start_transcript = Transcript.start(start.state)
    frontier: dict = {merge_key(start, start_transcript): [ONE, start, start_transcript]}

    totals = {Outcome.ACCEPT: ZERO, Outcome.REJECT: ZERO, Outcome.RESTART: ZERO}
    expected_steps = ZERO
    expanded = 0

    following: dict = {}

    def push(probability: Fraction, cfg: MachineConfiguration, transcript: Transcript):
        key = merge_key(cfg, transcript)
        node = following.get(key)
        if node is None:
            following[key] = [probability, cfg, transcript]
        else:
            node[0] += probability

    for _ in range(horizon):
        if not frontier:
            break
        following = {}
        for probability, cfg, transcript in frontier.values():
            expanded += 1
            asked = open_query(spec, cfg, transcript)
            if asked is not None:
                branch, after = answer(spec, tape, cfg, asked, prover.reply(asked))
                successors = [(branch, after)]
            else:
                successors = advance(spec, tape, cfg, transcript)

            for branch, after in successors:
                mass = probability * branch.probability
                successor = branch.configuration
                if branch.outcome is None:
                    push(mass, successor, after)
                elif branch.outcome is Outcome.RESTART and unroll_restarts:
                    push(mass, *restart(spec, successor, after))
                else:
                    totals[branch.outcome] += mass
                    expected_steps += mass * successor.time

        if len(following) > node_cap:
            raise BranchExplosionError(len(following), node_cap)
        frontier = following

    unresolved = sum((node[0] for node in frontier.values()), ZERO)
    expected_steps += sum((node[0] * node[1].time for node in frontier.values()), ZERO)
    logger.debug("exact evaluation of %s: %d nodes expanded", spec.name, expanded)
    return EvalResult(
        p_accept=totals[Outcome.ACCEPT],
        p_reject=totals[Outcome.REJECT],
        p_restart=totals[Outcome.RESTART],
        p_unresolved=unresolved,
        expected_steps_lower_bound=expected_steps,
        horizon=horizon,
        nodes=expanded,
    )

