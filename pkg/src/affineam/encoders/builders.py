"""
Operator families that encode string values, polynomials and powers.
"""

from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Union

from affineam.algebra import (
    AffineOperator,
    AffineState,
    apply,
    basis_state,
    compose,
    linear_combination_gadget,
    make_operator,
)
from affineam.algebra.rational import RationalInput, as_rational
from affineam.encoders.models import DigitAppendOperator, ExponentEncoder, PolynomialEncoderBank
from affineam.errors import DigitRangeError

Symbol = Union[int, str]


def digit_append(base: int, digit: int, target: int = 2, dimension: int = 3) -> AffineOperator:
    """
    Operator realizing value <- digit + base * value in entry ``target``.

    Raises:
        DigitRangeError: If digit is not in [0, base-1]
    """
    return DigitAppendOperator(base, digit, target, dimension).to_operator()


def encode_value(
    word: Sequence[Symbol], base: int, alphabet: Optional[Sequence[str]] = None
) -> AffineState:
    """
    Fold a word into (1, val, -val), most significant symbol first.

    Args:
        word: Digits, or symbols of ``alphabet`` (symbol k has digit k)
        base: Numeral base
        alphabet: Optional ordered alphabet mapping symbols to digits

    Raises:
        DigitRangeError: If a digit falls outside the base
    """
    state = basis_state(3)
    for symbol in word:
        digit = _digit_of(symbol, alphabet)
        state = apply(digit_append(base, digit), state)
    return state


def string_value(
    word: Sequence[Symbol], base: int, alphabet: Optional[Sequence[str]] = None
) -> int:
    """Scalar version of encode_value, for oracles and reports."""
    value = 0
    for symbol in word:
        digit = _digit_of(symbol, alphabet)
        if not 0 <= digit < base:
            raise DigitRangeError(digit, base)
        value = digit + base * value
    return value


def binomial_update(degree: int) -> AffineOperator:
    """
    (1, i, ..., i^d, y, bal) -> (1, i+1, ..., (i+1)^d, y, bal).

    Row k carries binomial(k, j) in column j; the balancing row closes each
    column to 1.
    """
    size = degree + 3
    rows = [[Fraction(0)] * size for _ in range(size)]
    for k in range(degree + 1):
        for j in range(k + 1):
            rows[k][j] = Fraction(comb(k, j))
    rows[degree + 1][degree + 1] = Fraction(1)
    last = size - 1
    for j in range(size - 1):
        column_total = sum(rows[i][j] for i in range(last))
        rows[last][j] = 1 - column_total
    rows[last][last] = Fraction(1)
    return make_operator(rows, name=f"BIN{degree}")


def polynomial_encoder(coefficients: Sequence[RationalInput], degree: int) -> PolynomialEncoderBank:
    """
    Register bank evaluating p(l) = sum p_k l^k while reading 0^l.

    Args:
        coefficients: p_0..p_d (shorter lists are zero-padded)
        degree: d >= 0
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    coeffs = [as_rational(c) for c in coefficients]
    if len(coeffs) > degree + 1:
        raise ValueError(f"{len(coeffs)} coefficients exceed degree {degree}")
    coeffs += [Fraction(0)] * (degree + 1 - len(coeffs))

    binomial = binomial_update(degree)
    # constant entry doubles as x_0 of the gadget
    gadget = linear_combination_gadget(degree, coeffs[1:], constant=coeffs[0])
    step = compose(gadget, binomial, name=f"POLY{degree}")
    return PolynomialEncoderBank(
        degree=degree,
        coefficients=tuple(coeffs),
        binomial=binomial,
        gadget=gadget,
        step=step,
    )


def ratio_operator(a: RationalInput, name: Optional[str] = None) -> AffineOperator:
    """M_a = [[a, 0], [1-a, 1]]."""
    ratio = as_rational(a)
    return make_operator([[ratio, 0], [1 - ratio, 1]], name=name or f"M[{ratio}]")


def exponent_encoder(a: RationalInput) -> ExponentEncoder:
    """Two-state register storing a^l in its first entry."""
    ratio = as_rational(a)
    return ExponentEncoder(ratio=ratio, operator=ratio_operator(ratio))


def _digit_of(symbol: Symbol, alphabet: Optional[Sequence[str]]) -> int:
    if isinstance(symbol, int):
        return symbol
    if alphabet is None:
        raise TypeError("symbolic words need an alphabet")
    try:
        return list(alphabet).index(symbol)
    except ValueError:
        raise DigitRangeError(-1, len(alphabet)) from None
