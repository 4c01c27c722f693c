"""
Result types and prover interfaces for game evaluation.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Optional, Protocol, Sequence

from affineam.errors import EngineError
from affineam.machine import Outcome, Transcript

ZERO = Fraction(0)


class ProverStrategy(Protocol):
    """A deterministic map from the public transcript to the next reply."""

    def reply(self, transcript: Transcript) -> str: ...


class Prover(ABC):
    """
    Base class for provers.

    ``view`` returns what the prover's future behaviour depends on. Two
    branches with equal configurations and equal views are merged during
    exact evaluation. The default view is the transcript object itself, which
    never merges anything.
    """

    @abstractmethod
    def reply(self, transcript: Transcript) -> str:
        """Reply to the query that ends ``transcript``."""

    def view(self, transcript: Transcript) -> Hashable:
        return transcript


class ProverMoves(Protocol):
    """Restricts the replies considered by worst-case search."""

    def moves(self, transcript: Transcript) -> Sequence[str]: ...

    def view(self, transcript: Transcript) -> Hashable: ...


@dataclass(frozen=True)
class EvalResult:
    """
    Exact outcome probabilities of one evaluation.

    Attributes:
        p_accept: Mass of accepting leaves
        p_reject: Mass of rejecting leaves
        p_restart: Mass of Restart leaves
        p_unresolved: Mass still running at the horizon
        expected_steps_lower_bound: Expected transitions, counting running
            paths as stopping at the horizon
        horizon: Transition bound used
        nodes: Nodes expanded (exact) or memoized (worst case)
        strategy: Realized prover strategy keyed by transcript, when recorded
    """

    p_accept: Fraction
    p_reject: Fraction
    p_restart: Fraction
    p_unresolved: Fraction
    expected_steps_lower_bound: Fraction
    horizon: int
    nodes: int = 0
    strategy: Optional[dict] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        total = self.p_accept + self.p_reject + self.p_restart + self.p_unresolved
        if total != 1:
            raise EngineError(f"outcome probabilities sum to {total}, not 1")

    @property
    def accept_interval(self) -> tuple[Fraction, Fraction]:
        """Exact lower bound and lower bound plus running mass."""
        return (self.p_accept, self.p_accept + self.p_unresolved)

    @property
    def reject_interval(self) -> tuple[Fraction, Fraction]:
        return (self.p_reject, self.p_reject + self.p_unresolved)

    def probability(self, outcome: Outcome) -> Fraction:
        return {
            Outcome.ACCEPT: self.p_accept,
            Outcome.REJECT: self.p_reject,
            Outcome.RESTART: self.p_restart,
        }[outcome]


@dataclass(frozen=True)
class RoundSummary:
    """
    Outcome of a single round of a restarting protocol.

    Attributes:
        p_accept: Accepting mass of one round
        p_reject: Rejecting mass of one round
        p_restart: Mass that starts another round
    """

    p_accept: Fraction
    p_reject: Fraction
    p_restart: Fraction

    def __post_init__(self):
        total = self.p_accept + self.p_reject + self.p_restart
        if total != 1:
            raise EngineError(f"round probabilities sum to {total}, not 1")

    @classmethod
    def from_result(cls, result: EvalResult) -> "RoundSummary":
        """
        Raises:
            EngineError: If part of the round is still running at the horizon
        """
        if result.p_unresolved:
            raise EngineError(
                f"round unresolved with probability {result.p_unresolved} "
                f"at horizon {result.horizon}"
            )
        return cls(result.p_accept, result.p_reject, result.p_restart)


@dataclass(frozen=True)
class RoundFixpoint:
    """Closed form of repeating a round until it accepts or rejects."""

    overall_accept: Fraction
    overall_reject: Fraction
    expected_rounds: Fraction


@dataclass(frozen=True)
class MonteCarloResult:
    """
    Empirical frequencies and running-time statistics.

    Attributes:
        trials: Number of sampled runs
        accepts: Runs ending in an accepting leaf
        rejects: Runs ending in a rejecting leaf
        restarts: Runs ending in a Restart leaf (without unrolling)
        unresolved: Runs still going at the horizon
        mean_steps: Mean transitions of halted runs
        variance_steps: Population variance of the same
        outcomes: Per-run outcome, None when unresolved
    """

    trials: int
    accepts: int
    rejects: int
    restarts: int
    unresolved: int
    mean_steps: Fraction
    variance_steps: Fraction
    outcomes: tuple[Optional[Outcome], ...] = field(repr=False, default=())

    def frequency(self, outcome: Outcome) -> Fraction:
        count = {
            Outcome.ACCEPT: self.accepts,
            Outcome.REJECT: self.rejects,
            Outcome.RESTART: self.restarts,
        }[outcome]
        return Fraction(count, self.trials)

    def within_sigmas(self, outcome: Outcome, exact: Fraction, sigmas: int = 3) -> bool:
        """|frequency - exact| <= sigmas * sqrt(exact (1 - exact) / trials), squared exactly."""
        gap = self.frequency(outcome) - exact
        return gap * gap * self.trials <= sigmas * sigmas * exact * (1 - exact)
