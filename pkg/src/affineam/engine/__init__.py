"""
Interaction engine: exact, worst-case, round and sampled evaluation of prover/verifier games.
"""

from affineam.engine.exact import evaluate_exact
from affineam.engine.models import (
    EvalResult,
    MonteCarloResult,
    Prover,
    ProverMoves,
    ProverStrategy,
    RoundFixpoint,
    RoundSummary,
)
from affineam.engine.provers import (
    AnyMoves,
    ConstantProver,
    FunctionProver,
    ScriptedProver,
    TableProver,
)
from affineam.engine.rounds import fixpoint_of, round_fixpoint, truncated_accept
from affineam.engine.sampling import (
    RunRecord,
    monte_carlo,
    sample_branch,
    sample_run,
    sigma_interval,
    within_sigma_band,
)
from affineam.engine.worst_case import evaluate_worst_case, worst_case_ratio

__all__ = [
    "AnyMoves",
    "ConstantProver",
    "EvalResult",
    "FunctionProver",
    "MonteCarloResult",
    "Prover",
    "ProverMoves",
    "ProverStrategy",
    "RoundFixpoint",
    "RoundSummary",
    "RunRecord",
    "ScriptedProver",
    "TableProver",
    "evaluate_exact",
    "evaluate_worst_case",
    "fixpoint_of",
    "monte_carlo",
    "round_fixpoint",
    "sample_branch",
    "sample_run",
    "sigma_interval",
    "truncated_accept",
    "within_sigma_band",
    "worst_case_ratio",
]
