"""
Real-time verifier for marked palindromes, one (n+2)-state register.

Symbol k of the alphabet multiplies the first entry by the k-th prime and
pushes the difference into entry k+1. Reading x forwards and then undoing
it backwards leaves e_1 only when the second half is the reverse of the
first.
"""

from fractions import Fraction
from typing import Literal

from affineam.algebra import AffineOperator, inverse, make_operator
from affineam.algebra.rational import RationalInput
from affineam.protocols.claims import ClaimLayout, middle_of
from affineam.protocols.models import ProtocolBundle, check_epsilon
from affineam.protocols.provers import MiddleClaimProver

Reading = Literal["marked", "existential"]

MARKER = "$"


def first_primes(count: int) -> list[int]:
    primes: list[int] = []
    candidate = 2
    while len(primes) < count:
        if all(candidate % p for p in primes if p * p <= candidate):
            primes.append(candidate)
        candidate += 1
    return primes


def prime_operator(index: int, prime: int, dimension: int) -> AffineOperator:
    """P_k acting as [[p, 0], [1-p, 1]] on entries 1 and k+1."""
    rows = [[Fraction(int(i == j)) for j in range(dimension)] for i in range(dimension)]
    rows[0][0] = Fraction(prime)
    rows[index][0] = Fraction(1 - prime)
    return make_operator(rows, name=f"P{index}")


def mpal_final(delta: Fraction, size: int) -> AffineOperator:
    """Scale entries 2..n+1 by delta; the last entry balances."""
    dimension = size + 2
    rows = [[Fraction(0)] * dimension for _ in range(dimension)]
    rows[0][0] = Fraction(1)
    for k in range(1, size + 1):
        rows[k][k] = delta
        rows[-1][k] = 1 - delta
    rows[-1][-1] = Fraction(1)
    return make_operator(rows, name="M_F")


def mpal_layout(
    alphabet: tuple[str, ...],
    epsilon: RationalInput,
    reading: Reading = "marked",
) -> ClaimLayout:
    if not alphabet:
        raise ValueError("the alphabet must not be empty")
    if MARKER in alphabet:
        raise ValueError(f"{MARKER!r} is reserved for the middle marker")
    eps = check_epsilon(epsilon)
    delta = 2 * (1 - eps) / eps
    size = len(alphabet)
    forward = {
        symbol: prime_operator(k, prime, size + 2)
        for k, (symbol, prime) in enumerate(zip(alphabet, first_primes(size)), start=1)
    }
    backward = {symbol: inverse(op) for symbol, op in forward.items()}
    marked = reading == "marked"
    return ClaimLayout(
        alphabet=tuple(alphabet) + ((MARKER,) if marked else ()),
        dimension=size + 2,
        before=forward,
        after=backward,
        final=mpal_final(delta, size),
        claimable=frozenset({MARKER}) if marked else frozenset(alphabet),
    )


def residual(layout: ClaimLayout, word: str, position: int) -> Fraction:
    """Sum of |v_{k+1}| over the symbol entries of the pre-final state."""
    state = layout.pre_final_state(word, position)
    if state is None:
        raise ValueError(f"claim {position} on {word!r} is rejected deterministically")
    return sum((abs(x) for x in state.entries[1:-1]), Fraction(0))


def build_mpal(
    alphabet: tuple[str, ...] = ("a", "b"),
    epsilon: RationalInput = Fraction(1, 3),
    reading: Reading = "marked",
) -> ProtocolBundle:
    """
    Verifier for {x $ x^R : x over the alphabet}.

    With the existential reading the input has no marker and any symbol may
    be the middle, which gives odd-length palindromes.

    Raises:
        EpsilonRangeError: If epsilon is not in (0, 1/2)
    """
    eps = check_epsilon(epsilon)
    layout = mpal_layout(alphabet, eps, reading)

    def oracle(word: str) -> bool:
        middle = middle_of(word)
        if middle is None or any(symbol not in layout.alphabet for symbol in word):
            return False
        if reading == "existential":
            return word == word[::-1]
        left, right = word[: middle - 1], word[middle:]
        return word[middle - 1] == MARKER and MARKER not in left + right and left == right[::-1]

    return ProtocolBundle(
        name="mpal",
        verifier=layout.verifier("mpal"),
        honest=lambda word: MiddleClaimProver(middle_of(word)),
        oracle=oracle,
        epsilon=eps,
        alphabet=layout.alphabet,
        horizon_for=lambda word: 2 * len(word) + 8,
        parameters={
            "delta": 2 * (1 - eps) / eps,
            "primes": tuple(first_primes(len(alphabet))),
            "reading": reading,
            "layout": layout,
        },
    )
