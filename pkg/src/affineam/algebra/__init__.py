"""
Exact affine algebra: states, operators, weighting and the linear-combination gadget.
"""

from affineam.algebra.models import AffineOperator, AffineState, WeightDistribution
from affineam.algebra.operators import (
    apply,
    basis_state,
    compose,
    compose_all,
    identity,
    inverse,
    linear_combination_gadget,
    make_operator,
    make_state,
    power,
    weight,
)
from affineam.algebra.rational import (
    Rational,
    as_rational,
    format_rational,
    parse_rational,
    to_decimal,
)

__all__ = [
    "AffineOperator",
    "AffineState",
    "WeightDistribution",
    "apply",
    "basis_state",
    "compose",
    "compose_all",
    "identity",
    "inverse",
    "linear_combination_gadget",
    "make_operator",
    "make_state",
    "power",
    "weight",
    "Rational",
    "as_rational",
    "format_rational",
    "parse_rational",
    "to_decimal",
]
