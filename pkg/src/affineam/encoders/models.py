"""
Encoder descriptors.
"""

from dataclasses import dataclass
from fractions import Fraction

from affineam.algebra import AffineOperator, AffineState, apply, basis_state, make_operator
from affineam.errors import DigitRangeError, DimensionError


@dataclass(frozen=True)
class DigitAppendOperator:
    """
    Operator appending one base-n digit to a register entry.

    With dimension 3 and target 2 this is A_k acting on (1, val, -val); with
    dimension 4 it appends to entry 2 (the A family) or entry 3 (the B family)
    of (1, a, b, bal). The last entry always balances.

    Attributes:
        base: Numeral base n
        digit: Digit value in [0, n-1]
        target: 1-based register entry receiving the digit
        dimension: Register size
    """

    base: int
    digit: int
    target: int = 2
    dimension: int = 3

    def __post_init__(self):
        if self.base < 1:
            raise DigitRangeError(self.digit, self.base)
        if not 0 <= self.digit < self.base:
            raise DigitRangeError(self.digit, self.base)
        if self.dimension < 3 or not 2 <= self.target <= self.dimension - 1:
            raise DimensionError(
                f"target entry {self.target} invalid for a {self.dimension}-state register"
            )

    @property
    def name(self) -> str:
        family = "A" if self.target == 2 else ("B" if self.target == 3 else f"E{self.target}")
        return f"{family}{self.digit}/{self.base}"

    def to_operator(self) -> AffineOperator:
        size = self.dimension
        t = self.target - 1
        last = size - 1
        rows = [[Fraction(1) if i == j else Fraction(0) for j in range(size)] for i in range(size)]
        rows[t][0] = Fraction(self.digit)
        rows[t][t] = Fraction(self.base)
        rows[last][0] = Fraction(-self.digit)
        rows[last][t] = Fraction(1 - self.base)
        return make_operator(rows, name=self.name)


@dataclass(frozen=True)
class PolynomialEncoderBank:
    """
    Register computing p(l) while reading 0^l.

    Layout is (1, l, l^2, ..., l^d, p(l), bal), dimension d+3.

    Attributes:
        degree: Polynomial degree d
        coefficients: p_0..p_d, constant term first
        binomial: The (i+1)^k update on the power entries
        gadget: Linear combination writing p into entry d+2
        step: gadget after binomial, the per-symbol operator
    """

    degree: int
    coefficients: tuple[Fraction, ...]
    binomial: AffineOperator
    gadget: AffineOperator
    step: AffineOperator

    @property
    def dimension(self) -> int:
        return self.degree + 3

    @property
    def value_entry(self) -> int:
        """1-based entry holding p(l)."""
        return self.degree + 2

    def initial_state(self) -> AffineState:
        """State after reading the empty word: p(0) already in place."""
        return apply(self.gadget, basis_state(self.dimension))

    def encode(self, length: int) -> AffineState:
        state = self.initial_state()
        for _ in range(length):
            state = apply(self.step, state)
        return state

    def evaluate(self, x: int) -> Fraction:
        """Independent scalar evaluation of p."""
        return sum((c * Fraction(x) ** k for k, c in enumerate(self.coefficients)), Fraction(0))


@dataclass(frozen=True)
class ExponentEncoder:
    """
    Two-state register holding a^l after l symbols.

    Attributes:
        ratio: The rational a
        operator: M_a = [[a, 0], [1-a, 1]]
    """

    ratio: Fraction
    operator: AffineOperator

    def encode(self, length: int) -> AffineState:
        state = basis_state(2)
        for _ in range(length):
            state = apply(self.operator, state)
        return state
