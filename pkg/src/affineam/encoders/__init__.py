"""
Encoders module for string values, polynomials and exponentials in affine registers.
"""

from affineam.encoders.builders import (
    binomial_update,
    digit_append,
    encode_value,
    exponent_encoder,
    polynomial_encoder,
    ratio_operator,
    string_value,
)
from affineam.encoders.models import DigitAppendOperator, ExponentEncoder, PolynomialEncoderBank

__all__ = [
    "DigitAppendOperator",
    "ExponentEncoder",
    "PolynomialEncoderBank",
    "binomial_update",
    "digit_append",
    "encode_value",
    "exponent_encoder",
    "polynomial_encoder",
    "ratio_operator",
    "string_value",
]
