"""
Error hierarchy for AffineAM.

Every failure raised by the library derives from AffineAMError so callers
(the CLI in particular) can catch one type and still inspect the structured
context each subclass carries.
"""

from typing import Optional


class AffineAMError(RuntimeError):
    """Base class for all AffineAM errors."""


# Algebra


class AlgebraError(AffineAMError):
    """Raised by exact affine algebra."""


class NormalizationError(AlgebraError):
    """A vector or operator violates the sum-to-one rule."""

    def __init__(self, message: str, total=None):
        super().__init__(message)
        self.total = total


class DimensionError(AlgebraError):
    """Operands have incompatible dimensions."""

    def __init__(self, message: str, expected: Optional[int] = None, got: Optional[int] = None):
        super().__init__(message)
        self.expected = expected
        self.got = got


class SingularError(AlgebraError):
    """Operator is not invertible over the rationals."""


class DigitRangeError(AlgebraError):
    """Digit outside [0, base-1] for a string-value encoder."""

    def __init__(self, digit: int, base: int):
        super().__init__(f"digit {digit} out of range for base {base}")
        self.digit = digit
        self.base = base


# Machine model


class MachineError(AffineAMError):
    """Raised by single-step verifier semantics."""


class MissingReplyError(MachineError):
    """A communication state was stepped without a prover reply."""

    def __init__(self, state):
        super().__init__(f"state {state!r} is a communication state and needs a prover reply")
        self.state = state


class InvalidReplySymbolError(MachineError):
    """Prover reply is not a symbol of the communication alphabet."""

    def __init__(self, reply: str, alphabet=()):
        super().__init__(f"reply {reply!r} is not in the communication alphabet")
        self.reply = reply
        self.alphabet = tuple(alphabet)


class ModeError(MachineError):
    """Operation not defined for this verifier mode."""


class HeadBoundsError(MachineError):
    """Two-way head tried to leave the padded input."""

    def __init__(self, position: int, length: int):
        super().__init__(f"head moved to {position}, outside [0, {length + 1}]")
        self.position = position
        self.length = length


class MissingTransitionError(MachineError):
    """No transition is defined for the current situation."""

    def __init__(self, message: str, state=None, symbol: Optional[str] = None):
        super().__init__(message)
        self.state = state
        self.symbol = symbol


# Interaction engine


class EngineError(AffineAMError):
    """Raised by game-tree evaluation."""


class BranchExplosionError(EngineError):
    """Live node count exceeded the configured cap."""

    def __init__(self, node_count: int, cap: int):
        super().__init__(f"{node_count} live nodes exceed the cap of {cap}")
        self.node_count = node_count
        self.cap = cap


class DivergenceError(EngineError):
    """A round never accepts nor rejects, so the round fixpoint is undefined."""


# Turing machines


class TuringError(AffineAMError):
    """Raised by the Turing-machine simulator."""


class AlphabetError(TuringError):
    """Input symbol outside the machine's input alphabet."""

    def __init__(self, symbol: str):
        super().__init__(f"symbol {symbol!r} is not in the input alphabet")
        self.symbol = symbol


class HaltedError(TuringError):
    """Successor requested for a halting configuration."""


class FlavorError(TuringError):
    """Deterministic machine where an alternating one is required, or vice versa."""


class AlternationError(TuringError):
    """Alternating machine cannot be normalized."""


# Protocols


class ProtocolError(AffineAMError):
    """Raised by protocol builders."""


class EpsilonRangeError(ProtocolError):
    """Error bound outside (0, 1/2), or (0, 1/2] where 1/2 is admitted."""

    def __init__(self, epsilon, closed: bool = False):
        bound = "in (0, 1/2]" if closed else "strictly between 0 and 1/2"
        super().__init__(f"epsilon {epsilon} must lie {bound}")
        self.epsilon = epsilon


class BudgetError(ProtocolError):
    """Continuation check breaks the completeness bound for the declared budget."""

    def __init__(self, message: str, false_reject=None, epsilon=None):
        super().__init__(message)
        self.false_reject = false_reject
        self.epsilon = epsilon


class DegenerateInputError(ProtocolError):
    """Input too small for the requested construction."""


class MalformedInstanceError(ProtocolError):
    """Knapsack-game instance text does not parse."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position


class OutputConventionError(ProtocolError):
    """Reduction machine violates the write-once output convention."""


# Configuration / CLI


class ConfigError(AffineAMError):
    """Experiment configuration could not be parsed or validated."""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        super().__init__(message)
        self.field = field
        self.line = line

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.field:
            where.append(f"field '{self.field}'")
        prefix = f"[{', '.join(where)}] " if where else ""
        return prefix + super().__str__()
