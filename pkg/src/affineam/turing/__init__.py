"""
Single-tape deterministic and alternating Turing machines.
"""

from affineam.turing.catalog import (
    MEMBER_INSTANCE,
    NON_MEMBER_INSTANCE,
    get_machine,
    machine_names,
    reference_membership,
    sample_machines,
)
from affineam.turing.models import (
    TM_LEFT,
    TM_RIGHT,
    ConfigurationStream,
    Flavor,
    StateKind,
    TMAction,
    TMConfiguration,
    TuringMachineSpec,
)
from affineam.turing.normalizer import normalize_alternating
from affineam.turing.simulator import (
    accepts_from,
    apply_action,
    branch,
    check_machine,
    computation_tree,
    evaluate_alternating,
    honest_stream,
    initial_config,
    next_config,
    run,
    successors,
)

__all__ = [
    "MEMBER_INSTANCE",
    "NON_MEMBER_INSTANCE",
    "TM_LEFT",
    "TM_RIGHT",
    "ConfigurationStream",
    "Flavor",
    "StateKind",
    "TMAction",
    "TMConfiguration",
    "TuringMachineSpec",
    "accepts_from",
    "apply_action",
    "branch",
    "check_machine",
    "computation_tree",
    "evaluate_alternating",
    "get_machine",
    "honest_stream",
    "initial_config",
    "machine_names",
    "next_config",
    "normalize_alternating",
    "reference_membership",
    "run",
    "sample_machines",
    "successors",
]
