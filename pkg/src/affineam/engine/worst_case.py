"""
Optimal cheating provers by expectimax.

The verifier's coins are public: after every step the prover sees the new
state, the head move and all weighting outcomes. A prover that maximizes
the objective separately at every reply node therefore does at least as
well as any strategy, deterministic or randomized, and the maximum is
attained by a deterministic one. Chance nodes take the expectation over the
verifier's branches; reply nodes take the maximum over the allowed replies.

Values are memoized on (configuration, remaining horizon), plus the move
generator's view when replies are restricted per transcript. Recursion is
replaced by an explicit stack since TM-stream protocols run thousands of
transitions deep.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Optional, Sequence, Union

from affineam.engine.expansion import advance, answer, open_query
from affineam.engine.models import EvalResult, ProverMoves, RoundFixpoint
from affineam.errors import BranchExplosionError, DivergenceError, EngineError
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
MAX_RATIO_ITERATIONS = 64

# (accept, reject, restart, unresolved, expected transitions)
Value = tuple[Fraction, Fraction, Fraction, Fraction, Fraction]

LEAF_VALUES: dict[Outcome, Value] = {
    Outcome.ACCEPT: (ONE, ZERO, ZERO, ZERO, ZERO),
    Outcome.REJECT: (ZERO, ONE, ZERO, ZERO, ZERO),
    Outcome.RESTART: (ZERO, ZERO, ONE, ZERO, ZERO),
}
UNRESOLVED: Value = (ZERO, ZERO, ZERO, ONE, ZERO)

OBJECTIVES = {
    "accept": (ONE, ZERO, ZERO, ZERO),
    "reject": (ZERO, ONE, ZERO, ZERO),
}

Objective = Union[str, Sequence[Fraction]]


@dataclass
class _Node:
    key: Hashable
    cfg: MachineConfiguration
    transcript: Transcript
    remaining: int


def evaluate_worst_case(
    spec: VerifierSpec,
    word: Sequence[str],
    horizon: int,
    objective: Objective = "accept",
    moves: Optional[ProverMoves] = None,
    node_cap: int = DEFAULT_NODE_CAP,
    record_strategy: bool = False,
) -> EvalResult:
    """
    Value of the game for a prover maximizing ``objective``.

    Args:
        spec: The verifier
        word: Input without end-markers
        horizon: Maximum number of transitions
        objective: "accept", "reject", or weights (w_acc, w_rej, w_restart,
            w_unresolved) of a linear objective
        moves: Optional per-transcript restriction of the prover's replies
        node_cap: Maximum number of memoized nodes
        record_strategy: Also return the optimal strategy as a table from
            transcript keys to replies

    Raises:
        BranchExplosionError: If the memo outgrows ``node_cap``
    """
    weights = _weights(objective)
    search = _Search(spec, pad(word), weights, moves, node_cap)
    root = search.node(initial_configuration(spec), Transcript.start(spec.initial), horizon)
    value = search.solve(root)

    strategy = search.realize(root) if record_strategy else None
    logger.debug("worst case for %s: %d memoized nodes", spec.name, len(search.memo))
    accept, reject, restart_mass, unresolved, steps = value
    return EvalResult(
        p_accept=accept,
        p_reject=reject,
        p_restart=restart_mass,
        p_unresolved=unresolved,
        expected_steps_lower_bound=steps,
        horizon=horizon,
        nodes=len(search.memo),
        strategy=strategy,
    )


def worst_case_ratio(
    spec: VerifierSpec,
    word: Sequence[str],
    horizon: int,
    moves: Optional[ProverMoves] = None,
    node_cap: int = DEFAULT_NODE_CAP,
) -> tuple[RoundFixpoint, EvalResult]:
    """
    Best overall acceptance of a round-structured protocol.

    Maximizes p_acc / (p_acc + p_rej) of a single round by Dinkelbach
    iteration: each pass maximizes p_acc - lam (p_acc + p_rej) with
    expectimax and moves lam to the ratio of the strategy it found. The
    sequence increases strictly until the linear maximum is 0.

    Returns:
        The closed-form fixpoint of the best strategy and its one-round result

    Raises:
        DivergenceError: If no strategy ever halts within the horizon
    """
    ratio = ZERO
    for iteration in range(MAX_RATIO_ITERATIONS):
        result = evaluate_worst_case(
            spec,
            word,
            horizon,
            objective=(1 - ratio, -ratio, ZERO, ZERO),
            moves=moves,
            node_cap=node_cap,
        )
        halted = result.p_accept + result.p_reject
        gain = result.p_accept - ratio * halted
        logger.debug("ratio iteration %d: lambda=%s gain=%s", iteration, ratio, gain)
        if halted == 0:
            if iteration == 0:
                raise DivergenceError("no prover strategy ever accepts or rejects")
            raise EngineError("ratio search lost its halting strategy")
        if gain == 0:
            return (
                RoundFixpoint(
                    overall_accept=result.p_accept / halted,
                    overall_reject=result.p_reject / halted,
                    expected_rounds=1 / (1 - result.p_restart),
                ),
                result,
            )
        ratio = result.p_accept / halted
    raise EngineError(f"ratio search did not settle in {MAX_RATIO_ITERATIONS} iterations")


class _Search:
    def __init__(self, spec, tape, weights, moves, node_cap):
        self.spec = spec
        self.tape = tape
        self.weights = weights
        self.moves = moves
        self.node_cap = node_cap
        self.memo: dict[Hashable, Value] = {}
        self.best: dict[Hashable, str] = {}

    def node(self, cfg: MachineConfiguration, transcript: Transcript, remaining: int) -> _Node:
        view = self.moves.view(transcript) if self.moves is not None else None
        return _Node((cfg.key, remaining, view), cfg, transcript, remaining)

    def options(self, node: _Node) -> list[tuple[Optional[str], list[tuple[Fraction, object]]]]:
        """Reply options, each a list of (probability, leaf value or child node)."""
        asked = open_query(self.spec, node.cfg, node.transcript)
        if asked is None:
            outcomes = advance(self.spec, self.tape, node.cfg, node.transcript)
            return [(None, [self._child(branch, after, node) for branch, after in outcomes])]

        replies = (
            self.moves.moves(asked) if self.moves is not None else self.spec.comm_alphabet
        )
        if not replies:
            raise EngineError(f"no prover moves at state {node.cfg.state!r}")
        found = []
        for reply in replies:
            branch, after = answer(self.spec, self.tape, node.cfg, asked, reply)
            found.append((reply, [self._child(branch, after, node)]))
        return found

    def _child(self, branch, transcript, parent: _Node):
        if branch.outcome is not None:
            return branch.probability, LEAF_VALUES[branch.outcome]
        return branch.probability, self.node(branch.configuration, transcript, parent.remaining - 1)

    def solve(self, root: _Node) -> Value:
        memo = self.memo
        plans: dict[Hashable, list] = {}
        stack = [root]
        while stack:
            node = stack[-1]
            if node.key in memo:
                stack.pop()
                continue
            if node.remaining == 0:
                memo[node.key] = UNRESOLVED
                stack.pop()
                continue
            plan = plans.get(node.key)
            if plan is None:
                plan = plans[node.key] = self.options(node)
                pending = [
                    child
                    for _, branches in plan
                    for _, child in branches
                    if isinstance(child, _Node) and child.key not in memo
                ]
                if pending:
                    stack.extend(pending)
                    continue
            memo[node.key] = self._combine(node, plan)
            del plans[node.key]
            stack.pop()
            if len(memo) > self.node_cap:
                raise BranchExplosionError(len(memo), self.node_cap)
        return memo[root.key]

    def _combine(self, node: _Node, plan) -> Value:
        best_value: Optional[Value] = None
        best_score = None
        for reply, branches in plan:
            total = [ZERO, ZERO, ZERO, ZERO, ZERO]
            for probability, child in branches:
                value = self.memo[child.key] if isinstance(child, _Node) else child
                for i in range(5):
                    total[i] += probability * value[i]
            total[4] += 1
            score = sum((w * x for w, x in zip(self.weights, total)), ZERO)
            if best_score is None or score > best_score:
                best_value, best_score = tuple(total), score
                if reply is not None:
                    self.best[node.key] = reply
        return best_value

    def realize(self, root: _Node) -> dict:
        """Walk the optimal strategy and record it per transcript."""
        table: dict = {}
        stack = [root]
        while stack:
            node = stack.pop()
            if node.remaining == 0:
                continue
            asked = open_query(self.spec, node.cfg, node.transcript)
            if asked is not None:
                reply = self.best[node.key]
                table[asked.key()] = reply
                branch, after = answer(self.spec, self.tape, node.cfg, asked, reply)
                successors = [(branch, after)]
            else:
                successors = advance(self.spec, self.tape, node.cfg, node.transcript)
            for branch, after in successors:
                if branch.outcome is None:
                    stack.append(self.node(branch.configuration, after, node.remaining - 1))
        return table


def _weights(objective: Objective) -> tuple[Fraction, ...]:
    if isinstance(objective, str):
        try:
            return OBJECTIVES[objective]
        except KeyError:
            raise EngineError(f"unknown objective {objective!r}") from None
    weights = tuple(Fraction(w) for w in objective)
    if len(weights) != 4:
        raise EngineError("objective weights are (accept, reject, restart, unresolved)")
    return weights
