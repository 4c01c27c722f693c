"""Tests for exact, worst-case, round and sampled evaluation."""

import random
from fractions import Fraction

import pytest

from affineam.engine import (
    AnyMoves,
    ConstantProver,
    RoundSummary,
    ScriptedProver,
    TableProver,
    evaluate_exact,
    evaluate_worst_case,
    fixpoint_of,
    monte_carlo,
    round_fixpoint,
    sample_run,
    sigma_interval,
    truncated_accept,
    within_sigma_band,
    worst_case_ratio,
)
from affineam.errors import BranchExplosionError, DivergenceError, EngineError
from affineam.machine import EventKind, Outcome
from affineam.protocols import MiddleClaimProver
from affineam.turing import NON_MEMBER_INSTANCE

from tests.conftest import THIRD

NOBODY = ConstantProver("no")


def test_zero_horizon_leaves_everything_unresolved(middle, coin):
    for spec, word in ((middle.verifier, "010"), (coin, "")):
        result = evaluate_exact(spec, word, NOBODY, 0)
        assert result.p_unresolved == 1
        assert result.accept_interval == (0, 1)
        assert result.reject_interval == (0, 1)


def test_honest_middle_claim_accepts(middle):
    result = evaluate_exact(middle.verifier, "010", MiddleClaimProver(2), 50)
    assert result.p_accept == 1
    assert result.p_unresolved == 0


def test_scripted_middle_claim(middle):
    prover = ScriptedProver(["no", "yes"], fallback="no")
    assert evaluate_exact(middle.verifier, "010", prover, 50).p_accept == 1


def test_off_center_claim_gives_soundness_bound(middle):
    result = evaluate_exact(middle.verifier, "10", MiddleClaimProver(1), 50)
    assert result.p_accept == THIRD
    assert result.p_reject == 2 * THIRD


def test_dedup_does_not_change_probabilities(coin):
    merged = evaluate_exact(coin, "0", NOBODY, 10)
    plain = evaluate_exact(coin, "0", NOBODY, 10, dedup=False)
    assert merged.probability(Outcome.ACCEPT) == plain.probability(Outcome.ACCEPT) == THIRD


def test_exact_coin_round(coin):
    result = evaluate_exact(coin, "", NOBODY, 10)
    assert (result.p_accept, result.p_reject, result.p_restart) == (THIRD, THIRD, THIRD)
    assert result.expected_steps_lower_bound == 2
    fixpoint = fixpoint_of(result)
    assert fixpoint.overall_accept == Fraction(1, 2)
    assert fixpoint.expected_rounds == Fraction(3, 2)


@pytest.mark.parametrize("rounds", [1, 2, 5])
def test_unrolled_restarts_match_truncated_series(coin, rounds):
    result = evaluate_exact(coin, "", NOBODY, 2 * rounds, unroll_restarts=True)
    summary = RoundSummary(THIRD, THIRD, THIRD)
    assert result.p_accept == truncated_accept(summary, rounds)
    assert result.p_unresolved == THIRD**rounds


def test_fixpoint_of_unresolved_round_fails(coin):
    with pytest.raises(EngineError):
        fixpoint_of(evaluate_exact(coin, "", NOBODY, 1))


@pytest.mark.parametrize(
    "summary, accept, rounds",
    [
        (RoundSummary(Fraction(1, 4), Fraction(0), Fraction(3, 4)), Fraction(1), Fraction(4)),
        (RoundSummary(Fraction(0), Fraction(1, 2), Fraction(1, 2)), Fraction(0), Fraction(2)),
        (
            RoundSummary(Fraction(1, 30), Fraction(1, 15), Fraction(9, 10)),
            THIRD,
            Fraction(10),
        ),
    ],
)
def test_round_fixpoint(summary, accept, rounds):
    fixpoint = round_fixpoint(summary)
    assert fixpoint.overall_accept == accept
    assert fixpoint.overall_reject == 1 - accept
    assert fixpoint.expected_rounds == rounds


def test_round_that_never_halts_diverges():
    with pytest.raises(DivergenceError):
        round_fixpoint(RoundSummary(Fraction(0), Fraction(0), Fraction(1)))


def test_round_summary_must_be_a_distribution():
    with pytest.raises(EngineError):
        RoundSummary(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))


def test_worst_case_middle(middle):
    spec = middle.verifier
    assert evaluate_worst_case(spec, "000", 50).p_accept == 0
    assert evaluate_worst_case(spec, "10", 50).p_accept == THIRD
    assert evaluate_worst_case(spec, "010", 50).p_accept == 1


def test_worst_case_mpal(mpal):
    spec = mpal.verifier
    assert evaluate_worst_case(spec, "a$b", 50).p_accept == Fraction(2, 33)
    assert evaluate_worst_case(spec, "a$a", 50).p_accept == 1


def test_worst_case_reject_objective(middle):
    result = evaluate_worst_case(middle.verifier, "010", 50, objective="reject")
    assert result.p_reject == 1


def test_unknown_objective(middle):
    with pytest.raises(EngineError):
        evaluate_worst_case(middle.verifier, "0", 10, objective="nothing")


def test_recorded_strategy_replays(middle):
    spec = middle.verifier
    best = evaluate_worst_case(spec, "10", 50, record_strategy=True)
    replay = evaluate_exact(spec, "10", TableProver(best.strategy, "no"), 50, dedup=False)
    assert replay.p_accept == best.p_accept


def test_restricted_moves(middle):
    never = AnyMoves(["no"])
    assert evaluate_worst_case(middle.verifier, "010", 50, moves=never).p_accept == 0


def test_worst_case_node_cap(mpal):
    with pytest.raises(BranchExplosionError) as info:
        evaluate_worst_case(mpal.verifier, "ab$ba", 50, node_cap=3)
    assert info.value.cap == 3


def test_worst_case_ratio_without_prover(coin):
    fixpoint, result = worst_case_ratio(coin, "", 10)
    assert fixpoint.overall_accept == Fraction(1, 2)
    assert result.p_restart == THIRD


def test_worst_case_ratio_diverges_without_halting(coin):
    with pytest.raises(DivergenceError):
        worst_case_ratio(coin, "", 1)


def test_monte_carlo_member_always_accepts(middle):
    result = monte_carlo(middle.verifier, "010", MiddleClaimProver(2), 500, seed=7, horizon=50)
    assert result.frequency(Outcome.ACCEPT) == 1
    assert result.unresolved == 0
    assert result.mean_steps > 0


def test_monte_carlo_is_reproducible(coin):
    first = monte_carlo(coin, "", NOBODY, 300, seed=11, horizon=10)
    second = monte_carlo(coin, "", NOBODY, 300, seed=11, horizon=10)
    assert first.outcomes == second.outcomes
    assert first.accepts + first.rejects + first.restarts == 300


def test_monte_carlo_agrees_with_exact(middle):
    result = monte_carlo(middle.verifier, "10", MiddleClaimProver(1), 3000, seed=1, horizon=50)
    assert result.within_sigmas(Outcome.ACCEPT, THIRD, sigmas=4)


def test_monte_carlo_needs_trials(coin):
    with pytest.raises(ValueError):
        monte_carlo(coin, "", NOBODY, 0, seed=0, horizon=10)


def test_sample_run_transcript(middle):
    record = sample_run(middle.verifier, "010", MiddleClaimProver(2), random.Random(0), 50)
    assert record.outcome is Outcome.ACCEPT
    replies = [e.symbol for e in record.transcript if e.kind is EventKind.REPLY]
    assert replies == ["no", "yes", "no", "no"]


def test_sigma_interval_is_clipped():
    assert sigma_interval(Fraction(1), 100) == (1.0, 1.0)
    low, high = sigma_interval(Fraction(1, 2), 100)
    assert low == pytest.approx(0.35) and high == pytest.approx(0.65)
    assert sigma_interval(Fraction(1, 100), 4)[0] == 0.0


@pytest.mark.parametrize(
    "value, target, samples, inside",
    [
        (Fraction(36, 100), THIRD, 100, True),
        (Fraction(1, 2), THIRD, 100, False),
        (Fraction(1, 2), Fraction(35, 100), 100, True),
        (Fraction(0), THIRD, 10**6, False),
        (THIRD, THIRD, 1, True),
    ],
)
def test_within_sigma_band(value, target, samples, inside):
    assert within_sigma_band(value, target, samples) is inside


@pytest.mark.slow
def test_monte_carlo_at_scale_agrees_with_exact(middle, coin, kg):
    fixtures = [
        (middle.verifier, "10", MiddleClaimProver(1), 50),
        (coin, "", NOBODY, 10),
        (kg.verifier, NON_MEMBER_INSTANCE, kg.honest_prover(NON_MEMBER_INSTANCE), 60),
    ]
    for spec, word, prover, horizon in fixtures:
        exact = evaluate_exact(spec, word, prover, horizon)
        sampled = monte_carlo(spec, word, prover, 100_000, seed=13, horizon=horizon)
        assert sampled.unresolved == 0
        for outcome in (Outcome.ACCEPT, Outcome.REJECT, Outcome.RESTART):
            expected = exact.probability(outcome)
            assert sampled.within_sigmas(outcome, expected, sigmas=4), (spec.name, outcome)


@pytest.mark.slow
def test_monte_carlo_step_statistics_of_the_coin_round(coin):
    sampled = monte_carlo(coin, "", NOBODY, 100_000, seed=2, horizon=10)
    assert sampled.mean_steps == 2
    assert sampled.variance_steps == 0
