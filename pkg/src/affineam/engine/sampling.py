"""
Seeded sampling of single runs.

Branches are drawn by exact inversion of their rational CDF: the
probabilities are scaled to integers over a common denominator and a single
uniform integer picks the branch. No floating point is involved, so a fixed
seed reproduces the same outcome sequence on every platform.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm, sqrt
from typing import Optional, Sequence

from affineam.engine.expansion import advance, answer, open_query, restart
from affineam.engine.models import MonteCarloResult, ProverStrategy
from affineam.machine import (
    Branch,
    Outcome,
    Transcript,
    VerifierSpec,
    initial_configuration,
    pad,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunRecord:
    """
    One sampled run.

    Attributes:
        outcome: Halting outcome, None if still running at the horizon
        steps: Transitions taken
        transcript: Public transcript of the run
    """

    outcome: Optional[Outcome]
    steps: int
    transcript: Transcript


def sample_branch(branches: Sequence[tuple[Branch, Transcript]], rng: random.Random):
    """Pick one (branch, transcript) pair with its exact probability."""
    if len(branches) == 1:
        return branches[0]
    scale = lcm(*(branch.probability.denominator for branch, _ in branches))
    draw = rng.randrange(scale)
    for pair in branches:
        draw -= int(pair[0].probability * scale)
        if draw < 0:
            return pair
    raise AssertionError("branch probabilities do not sum to 1")


def sample_run(
    spec: VerifierSpec,
    word: Sequence[str],
    prover: ProverStrategy,
    rng: random.Random,
    horizon: int,
    unroll_restarts: bool = False,
) -> RunRecord:
    """Follow one random path for at most ``horizon`` transitions."""
    tape = pad(word)
    cfg = initial_configuration(spec)
    transcript = Transcript.start(cfg.state)
    for _ in range(horizon):
        asked = open_query(spec, cfg, transcript)
        if asked is not None:
            branch, transcript = answer(spec, tape, cfg, asked, prover.reply(asked))
        else:
            branch, transcript = sample_branch(advance(spec, tape, cfg, transcript), rng)
        cfg = branch.configuration
        if branch.outcome is Outcome.RESTART and unroll_restarts:
            cfg, transcript = restart(spec, cfg, transcript)
        elif branch.outcome is not None:
            return RunRecord(branch.outcome, cfg.time, transcript)
    return RunRecord(None, cfg.time, transcript)


def monte_carlo(
    spec: VerifierSpec,
    word: Sequence[str],
    prover: ProverStrategy,
    trials: int,
    seed: int,
    horizon: int,
    unroll_restarts: bool = False,
) -> MonteCarloResult:
    """
    Empirical outcome frequencies over ``trials`` seeded runs.

    Step statistics cover halted runs only.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    counts = {Outcome.ACCEPT: 0, Outcome.REJECT: 0, Outcome.RESTART: 0}
    outcomes: list[Optional[Outcome]] = []
    steps: list[int] = []
    for _ in range(trials):
        record = sample_run(spec, word, prover, rng, horizon, unroll_restarts)
        outcomes.append(record.outcome)
        if record.outcome is not None:
            counts[record.outcome] += 1
            steps.append(record.steps)

    mean = Fraction(sum(steps), len(steps)) if steps else Fraction(0)
    variance = (
        sum(((s - mean) ** 2 for s in steps), Fraction(0)) / len(steps) if steps else Fraction(0)
    )
    logger.debug("monte carlo on %s: %s", spec.name, counts)
    return MonteCarloResult(
        trials=trials,
        accepts=counts[Outcome.ACCEPT],
        rejects=counts[Outcome.REJECT],
        restarts=counts[Outcome.RESTART],
        unresolved=trials - sum(counts.values()),
        mean_steps=mean,
        variance_steps=variance,
        outcomes=tuple(outcomes),
    )


def sigma_interval(value: Fraction, samples: int, sigmas: int = 3) -> tuple[float, float]:
    """
    value +- sigmas * sqrt(value (1 - value) / samples), clipped to [0, 1].

    For display only; judging a frequency goes through ``within_sigma_band``.
    """
    if samples <= 0:
        return 0.0, 1.0
    half = sigmas * sqrt(float(value * (1 - value)) / samples)
    return max(0.0, float(value) - half), min(1.0, float(value) + half)


def within_sigma_band(value: Fraction, target: Fraction, samples: int, sigmas: int = 3) -> bool:
    """Whether ``target`` lies in the sigma interval around ``value``, compared squared."""
    gap = value - target
    return gap * gap * samples <= sigmas * sigmas * value * (1 - value)
