"""
Real-time verifier for words with a marked middle symbol, one 3-state register.
"""

from fractions import Fraction
from typing import Literal

from affineam.algebra import AffineOperator, inverse, make_operator
from affineam.algebra.rational import RationalInput
from affineam.protocols.claims import ClaimLayout, middle_of
from affineam.protocols.models import ProtocolBundle, check_epsilon
from affineam.protocols.provers import MiddleClaimProver

Reading = Literal["marked", "existential"]


def shift_operator() -> AffineOperator:
    """A: (1, x, -x) -> (1, x+1, -x-1)."""
    return make_operator([[1, 0, 0], [1, 1, 0], [-1, 0, 1]], name="A")


def middle_final(delta: Fraction) -> AffineOperator:
    return make_operator(
        [[1, 1 - delta, 1 - delta], [0, delta, 0], [0, 0, delta]], name="M_F"
    )


def middle_layout(
    epsilon: RationalInput,
    alphabet: tuple[str, ...] = ("0", "1"),
    marked: str = "1",
    reading: Reading = "marked",
) -> ClaimLayout:
    eps = check_epsilon(epsilon)
    delta = (1 - eps) / (2 * eps)
    shift = shift_operator()
    back = inverse(shift, name="A^-1")
    return ClaimLayout(
        alphabet=tuple(alphabet),
        dimension=3,
        before={symbol: shift for symbol in alphabet},
        after={symbol: back for symbol in alphabet},
        final=middle_final(delta),
        claimable=frozenset(alphabet) if reading == "existential" else frozenset({marked}),
    )


def build_middle(
    epsilon: RationalInput,
    alphabet: tuple[str, ...] = ("0", "1"),
    marked: str = "1",
    reading: Reading = "marked",
) -> ProtocolBundle:
    """
    Verifier for {x s y : |x| = |y|} with s the marked symbol.

    The register counts up before the claimed middle and down after it; a
    claim off by m cells leaves (1, m, -m), which the final operator scales
    to acceptance 1/(1 + 2|m|delta) with delta = (1-eps)/(2 eps). With the
    existential reading every symbol may be the middle.

    Raises:
        EpsilonRangeError: If epsilon is not in (0, 1/2)
    """
    eps = check_epsilon(epsilon)
    if marked not in alphabet:
        raise ValueError(f"marked symbol {marked!r} is not in the alphabet")
    layout = middle_layout(eps, alphabet, marked, reading)

    def oracle(word: str) -> bool:
        middle = middle_of(word)
        if middle is None:
            return False
        return reading == "existential" or word[middle - 1] == marked

    return ProtocolBundle(
        name="middle",
        verifier=layout.verifier("middle"),
        honest=lambda word: MiddleClaimProver(middle_of(word)),
        oracle=oracle,
        epsilon=eps,
        alphabet=tuple(alphabet),
        horizon_for=lambda word: 2 * len(word) + 8,
        parameters={
            "delta": (1 - eps) / (2 * eps),
            "marked": marked,
            "reading": reading,
            "layout": layout,
        },
    )
