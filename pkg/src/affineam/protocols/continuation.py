"""
Probabilistic continuation check.

A dedicated register is driven across the input once per |w| prover
symbols and then weighted; outcome 1 rejects. The check rejects with a
small probability p, which bounds the expected length of any transmission
while an honest prover of a machine within the declared budget is cut off
with probability at most epsilon.

Exponential case: M_{1/2^k} on every cell and M_{1/m} at the end-marker
leave (2^{-k|w|}/m, ...), so p = 1/(m 2^{k|w|}) with m = c/epsilon.

Polynomial case: the binomial update on every cell after the first leaves
(1, x, ..., x^{k-1}, 0, bal) with x = |w| - 1, and an end gadget scales the
power entries by (m/2) binomial(k-1, j). Taken literally that gives
||v||_1 = 1 + m(|w|^{k-1} - 1). The calibrated gadget also writes (m-1)/2
into the spare entry, which makes ||v||_1 = m |w|^{k-1} exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Literal, Union

from affineam.algebra import AffineOperator, AffineState, apply, basis_state, make_operator, weight
from affineam.algebra.rational import RationalInput, as_rational
from affineam.encoders import binomial_update, ratio_operator
from affineam.errors import BudgetError, DegenerateInputError
from affineam.machine import IDENTITY
from affineam.protocols.models import check_epsilon

Case = Literal["polynomial", "exponential"]
Gadget = Literal["literal", "calibrated"]


def reset_operator(dimension: int) -> AffineOperator:
    """Sends every basis state to e_1."""
    rows = [[Fraction(int(i == 0))] * dimension for i in range(dimension)]
    return make_operator(rows, name="RESET")


def end_gadget(degree: int, m: Fraction, gadget: Gadget = "literal") -> AffineOperator:
    size = degree + 3
    last = size - 1
    spare = degree + 1
    rows = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for j in range(1, degree + 1):
        rows[j][j] = m / 2 * comb(degree, j)
    if gadget == "calibrated":
        rows[spare][0] = (m - 1) / 2
    for col in range(last):
        rows[last][col] = 1 - sum(rows[i][col] for i in range(last))
    return make_operator(rows, name=f"END[{gadget}]")


@dataclass(frozen=True)
class ContinuationCheck:
    """
    Operators and bookkeeping of one continuation check.

    Attributes:
        case: "polynomial" or "exponential"
        k: Exponent of the declared budget
        c: Constant of the declared budget
        epsilon: Error bound
        gadget: End gadget variant (polynomial case)
        dimension: Register size
        first: Action on the first cell of a sweep
        cell: Operator on every later cell
        end: Operator on the right end-marker
        reset: Operator returning the register to e_1 after a check
    """

    case: Case
    k: int
    c: int
    epsilon: Fraction
    gadget: Gadget
    dimension: int
    first: Union[AffineOperator, str]
    cell: AffineOperator
    end: AffineOperator
    reset: AffineOperator

    @property
    def m(self) -> Fraction:
        return Fraction(self.c) / self.epsilon

    def register_after_scan(self, length: int) -> AffineState:
        """Register right before the weighting, for a word of ``length``."""
        state = basis_state(self.dimension)
        for index in range(length):
            action = self.first if index == 0 else self.cell
            if action != IDENTITY:
                state = apply(action, state)
        return apply(self.end, state)

    def realized_p(self, length: int) -> Fraction:
        """Rejection probability of one check, from the register itself."""
        self._require_length(length)
        return weight(self.register_after_scan(length)).outcome(1)

    def closed_form(self, length: int) -> Fraction:
        self._require_length(length)
        if self.case == "exponential":
            return 1 / (self.m * 2 ** (self.k * length))
        return 1 / (self.m * Fraction(length) ** (self.k - 1))

    def budget(self, length: int) -> int:
        """Declared prefix length c |w|^k or c 2^{k|w|}."""
        if self.case == "exponential":
            return self.c * 2 ** (self.k * length)
        return self.c * length**self.k

    def checks(self, length: int) -> int:
        """Checks fired within the budget, one per |w| symbols."""
        self._require_length(length)
        return self.budget(length) // length

    def false_reject(self, length: int) -> Fraction:
        """1 - (1 - p)^checks: honest runs cut off within the budget."""
        return 1 - (1 - self.realized_p(length)) ** self.checks(length)

    def deviation(self, length: int) -> Fraction:
        """Realized p minus the closed form."""
        return self.realized_p(length) - self.closed_form(length)

    def assert_budget(self, length: int) -> Fraction:
        """
        Raises:
            BudgetError: If false_reject(length) exceeds epsilon
        """
        false_reject = self.false_reject(length)
        if false_reject > self.epsilon:
            raise BudgetError(
                f"{self.case}/{self.gadget} check rejects honest runs with probability "
                f"{false_reject} > {self.epsilon} at |w|={length}",
                false_reject=false_reject,
                epsilon=self.epsilon,
            )
        return false_reject

    @staticmethod
    def _require_length(length: int) -> None:
        if length < 1:
            raise DegenerateInputError("the continuation check needs |w| >= 1")


def exponential_check(k: int, c: int, epsilon: RationalInput) -> ContinuationCheck:
    """
    Exponential-budget check; epsilon may be 1/2 here, bundles still require
    it below 1/2.
    """
    eps = check_epsilon(epsilon, closed=True)
    if k < 1 or c < 1:
        raise ValueError("k and c must be positive")
    m = Fraction(c) / eps
    cell = ratio_operator(Fraction(1, 2**k), name=f"M[1/2^{k}]")
    return ContinuationCheck(
        case="exponential",
        k=k,
        c=c,
        epsilon=eps,
        gadget="literal",
        dimension=2,
        first=cell,
        cell=cell,
        end=ratio_operator(1 / m, name="M[1/m]"),
        reset=reset_operator(2),
    )


def polynomial_check(
    k: int, c: int, epsilon: RationalInput, gadget: Gadget = "literal"
) -> ContinuationCheck:
    eps = check_epsilon(epsilon, closed=True)
    if k < 1 or c < 1:
        raise ValueError("k and c must be positive")
    degree = k - 1
    return ContinuationCheck(
        case="polynomial",
        k=k,
        c=c,
        epsilon=eps,
        gadget=gadget,
        dimension=degree + 3,
        first=IDENTITY,
        cell=binomial_update(degree),
        end=end_gadget(degree, Fraction(c) / eps, gadget),
        reset=reset_operator(degree + 3),
    )


def make_check(
    case: Case, k: int, c: int, epsilon: RationalInput, gadget: Gadget = "literal"
) -> ContinuationCheck:
    if case == "exponential":
        return exponential_check(k, c, epsilon)
    if case == "polynomial":
        return polynomial_check(k, c, as_rational(epsilon), gadget)
    raise ValueError(f"unknown continuation case {case!r}")
