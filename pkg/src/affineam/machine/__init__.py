"""
Machine model: verifier specs, configurations, transcripts and step semantics.
"""

from affineam.machine.compiler import (
    CompiledTable,
    Controller,
    compile_controller,
    materialize,
    outcome_vectors,
)
from affineam.machine.models import (
    IDENTITY,
    LEFT_MARKER,
    RIGHT_MARKER,
    WEIGHT,
    Branch,
    BranchSet,
    Event,
    EventKind,
    ExplicitTable,
    MachineConfiguration,
    Mode,
    Outcome,
    RegisterSpec,
    State,
    Transcript,
    TransitionTable,
    VerifierSpec,
    pad,
)
from affineam.machine.semantics import final_weighting, initial_configuration, step
from affineam.machine.validation import Violation, validate

__all__ = [
    "IDENTITY",
    "LEFT_MARKER",
    "RIGHT_MARKER",
    "WEIGHT",
    "Branch",
    "BranchSet",
    "CompiledTable",
    "Controller",
    "Event",
    "EventKind",
    "ExplicitTable",
    "MachineConfiguration",
    "Mode",
    "Outcome",
    "RegisterSpec",
    "State",
    "Transcript",
    "TransitionTable",
    "VerifierSpec",
    "Violation",
    "compile_controller",
    "final_weighting",
    "initial_configuration",
    "materialize",
    "outcome_vectors",
    "pad",
    "step",
    "validate",
]
