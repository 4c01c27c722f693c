"""
Experiment runner that evaluates a protocol on a set of inputs.
"""

import logging
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Optional

from rich.progress import Progress, TaskID

from affineam.config import ExperimentConfig
from affineam.engine import (
    evaluate_exact,
    evaluate_worst_case,
    fixpoint_of,
    monte_carlo,
    sample_run,
    within_sigma_band,
    worst_case_ratio,
)
from affineam.engine.sampling import RunRecord
from affineam.errors import BranchExplosionError, EngineError
from affineam.formats import read_machine
from affineam.machine import CompiledTable
from affineam.protocols import ProtocolBundle, ProtocolRequest, build_protocol, uses_machine
from affineam.turing import TuringMachineSpec, get_machine, machine_names

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EvaluationRow:
    """
    Result for one input.

    Attributes:
        word: The input
        member: Oracle membership
        p_accept: Accepting mass (or frequency in Monte Carlo mode)
        p_reject: Rejecting mass
        p_restart: Mass ending in a Restart leaf
        p_unresolved: Mass still running at the horizon
        overall_accept: Round fixpoint acceptance of round-structured protocols
        expected_steps: Expected transitions (lower bound) or mean halting steps
        bound: The declared bound checked, as text
        satisfied: Whether the bound holds; None when the evaluation failed
        nodes: Nodes expanded or memoized
        note: Why the evaluation failed, or extra information
        variance_steps: Variance of halting steps, Monte Carlo mode only
        samples: Runs behind the judged frequency, Monte Carlo mode only
    """

    word: str
    member: bool
    p_accept: Fraction = Fraction(0)
    p_reject: Fraction = Fraction(0)
    p_restart: Fraction = Fraction(0)
    p_unresolved: Fraction = Fraction(0)
    overall_accept: Optional[Fraction] = None
    expected_steps: Fraction = Fraction(0)
    bound: str = ""
    satisfied: Optional[bool] = None
    nodes: int = 0
    note: str = ""
    variance_steps: Optional[Fraction] = None
    samples: Optional[int] = None


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    bundle: ProtocolBundle
    rows: list[EvaluationRow] = field(default_factory=list)

    @property
    def violations(self) -> list[EvaluationRow]:
        return [row for row in self.rows if row.satisfied is False]

    @property
    def members(self) -> int:
        return sum(row.member for row in self.rows)


class ExperimentRunner:
    """
    Orchestrates one experiment.

    Workflow:
    1. Build the protocol bundle from the catalog
    2. Enumerate the inputs
    3. Evaluate every input in the configured mode
    4. Check the declared bound on each row
    """

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self._bundle: Optional[ProtocolBundle] = None

    @property
    def bundle(self) -> ProtocolBundle:
        if self._bundle is None:
            self._bundle = self.build_bundle()
        return self._bundle

    def resolve_machine(self) -> Optional[TuringMachineSpec]:
        """
        The configured machine: a bundled name or a JSON file.

        Raises:
            ConfigError: If the file does not parse
            KeyError: If the name is neither bundled nor an existing file
        """
        name = self.config.protocol.machine
        if name is None:
            return None
        if name in machine_names():
            return get_machine(name)
        path = Path(name)
        if path.exists():
            return read_machine(path)
        raise KeyError(f"no bundled machine or file named {name!r}")

    def build_bundle(self) -> ProtocolBundle:
        protocol = self.config.protocol
        explicit = self.config.inputs.words
        longest = max((len(w) for w in explicit), default=0)
        if self.config.inputs.all_up_to is not None:
            longest = max(longest, self.config.inputs.all_up_to)
        request = ProtocolRequest(
            name=protocol.name,
            epsilon=protocol.epsilon_value,
            alphabet=tuple(protocol.alphabet) if protocol.alphabet else None,
            marked=protocol.marked_symbol,
            reading=protocol.reading,
            machine=self.resolve_machine() if uses_machine(protocol.name) else None,
            continuation=protocol.continuation.to_options(),
            word_length=max(longest, 1),
        )
        return build_protocol(request)

    def inputs(self) -> list[str]:
        """Explicit words plus all words up to the configured length, shortest first."""
        words = set(self.config.inputs.words)
        limit = self.config.inputs.all_up_to
        if limit is not None:
            alphabet = self.bundle.alphabet
            for length in range(limit + 1):
                words.update("".join(letters) for letters in product(alphabet, repeat=length))
        return sorted(words, key=lambda w: (len(w), w))

    def run(
        self, progress: Optional[Progress] = None, task_id: Optional[TaskID] = None
    ) -> ExperimentResult:
        """
        Evaluate every input.

        Args:
            progress: Optional Rich progress bar
            task_id: Optional TaskID for progress updates
        """
        words = self.inputs()
        result = ExperimentResult(self.config, self.bundle)
        if progress and task_id is not None:
            progress.update(task_id, total=len(words))
        for word in words:
            if progress and task_id is not None:
                progress.update(task_id, description=f"Evaluating {word or 'ε'!s}", advance=1)
            result.rows.append(self.evaluate(word))
        logger.info(
            "%s: %d inputs, %d violations", self.bundle.name, len(words), len(result.violations)
        )
        table = self.bundle.verifier.table
        if isinstance(table, CompiledTable):
            logger.debug("compiled table caches: %s", table.cache_sizes())
        return result

    def horizon_for(self, word: str) -> int:
        return self.config.engine.horizon or self.bundle.horizon_for(word)

    def evaluate(self, word: str) -> EvaluationRow:
        bundle = self.bundle
        member = bundle.is_member(word)
        mode = self.config.mode
        try:
            if mode == "worst":
                row = self._worst(word, member)
            elif mode == "mc":
                row = self._sampled(word, member)
            else:
                row = self._exact(word, member, rounds=mode == "rounds")
        except BranchExplosionError as e:
            logger.warning("%s on %r: %s", bundle.name, word, e)
            return EvaluationRow(word, member, note=f"node cap exceeded ({e.cap})")
        except EngineError as e:
            logger.warning("%s on %r: %s", bundle.name, word, e)
            return EvaluationRow(word, member, note=str(e))
        return self._check(row)

    def trace(self, word: str, seed: int) -> RunRecord:
        """One run against the honest prover with the given coins."""
        bundle = self.bundle
        return sample_run(
            bundle.verifier,
            word,
            bundle.honest_prover(word),
            random.Random(seed),
            self.horizon_for(word),
        )

    def _exact(self, word: str, member: bool, rounds: bool) -> EvaluationRow:
        bundle = self.bundle
        engine = self.config.engine
        result = evaluate_exact(
            bundle.verifier,
            word,
            bundle.honest_prover(word),
            self.horizon_for(word),
            node_cap=engine.node_cap,
            dedup=engine.dedup,
        )
        overall = None
        if bundle.round_structured and (rounds or not result.p_unresolved):
            overall = fixpoint_of(result).overall_accept
        return EvaluationRow(
            word,
            member,
            result.p_accept,
            result.p_reject,
            result.p_restart,
            result.p_unresolved,
            overall,
            result.expected_steps_lower_bound,
            nodes=result.nodes,
        )

    def _worst(self, word: str, member: bool) -> EvaluationRow:
        bundle = self.bundle
        moves = bundle.moves_for(word)
        horizon = self.horizon_for(word)
        node_cap = self.config.engine.node_cap
        overall = None
        if bundle.round_structured:
            fixpoint, result = worst_case_ratio(
                bundle.verifier, word, horizon, moves=moves, node_cap=node_cap
            )
            overall = fixpoint.overall_accept
        else:
            result = evaluate_worst_case(
                bundle.verifier, word, horizon, moves=moves, node_cap=node_cap
            )
        return EvaluationRow(
            word,
            member,
            result.p_accept,
            result.p_reject,
            result.p_restart,
            result.p_unresolved,
            overall,
            result.expected_steps_lower_bound,
            nodes=result.nodes,
        )

    def _sampled(self, word: str, member: bool) -> EvaluationRow:
        bundle = self.bundle
        sampling = self.config.sampling
        result = monte_carlo(
            bundle.verifier,
            word,
            bundle.honest_prover(word),
            sampling.trials,
            sampling.seed,
            self.horizon_for(word),
        )
        trials = result.trials
        overall = None
        samples = trials
        halted = result.accepts + result.rejects
        if bundle.round_structured and halted:
            overall = Fraction(result.accepts, halted)
            samples = halted
        return EvaluationRow(
            word,
            member,
            Fraction(result.accepts, trials),
            Fraction(result.rejects, trials),
            Fraction(result.restarts, trials),
            Fraction(result.unresolved, trials),
            overall,
            result.mean_steps,
            note=f"{trials} trials, seed {sampling.seed}",
            variance_steps=result.variance_steps,
            samples=samples,
        )

    def _check(self, row: EvaluationRow) -> EvaluationRow:
        """
        Members need acceptance >= 1 - epsilon, non-members <= epsilon.

        A sampled frequency passes when the threshold lies within 3 sigma of it.
        """
        eps = self.bundle.epsilon
        value = row.overall_accept if row.overall_accept is not None else row.p_accept
        target = 1 - eps if row.member else eps
        if row.member:
            bound, satisfied = ("= 1" if value == 1 else f">= {target}"), value >= target
        else:
            bound, satisfied = f"<= {target}", value <= target
        if row.samples is not None:
            bound += " (3 sigma)"
            satisfied = satisfied or within_sigma_band(value, target, row.samples)
        return replace(row, bound=bound, satisfied=satisfied)
