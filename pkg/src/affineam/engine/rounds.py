"""
Closed forms for protocols that restart until a round halts.
"""

from fractions import Fraction

from affineam.engine.models import EvalResult, RoundFixpoint, RoundSummary
from affineam.errors import DivergenceError


def round_fixpoint(summary: RoundSummary) -> RoundFixpoint:
    """
    Geometric-series closure of independent rounds.

    overall_accept = a / (a + r) and expected_rounds = 1 / (1 - s).

    Raises:
        DivergenceError: If a round never accepts nor rejects
    """
    halted = summary.p_accept + summary.p_reject
    if halted == 0:
        raise DivergenceError("a round neither accepts nor rejects")
    return RoundFixpoint(
        overall_accept=summary.p_accept / halted,
        overall_reject=summary.p_reject / halted,
        expected_rounds=1 / (1 - summary.p_restart),
    )


def fixpoint_of(result: EvalResult) -> RoundFixpoint:
    """round_fixpoint of a one-round evaluation result."""
    return round_fixpoint(RoundSummary.from_result(result))


def truncated_accept(summary: RoundSummary, rounds: int) -> Fraction:
    """Acceptance after at most ``rounds`` rounds: a (1 - s^rounds) / (1 - s)."""
    restart = summary.p_restart
    if restart == 1:
        return Fraction(0)
    return summary.p_accept * (1 - restart**rounds) / (1 - restart)
