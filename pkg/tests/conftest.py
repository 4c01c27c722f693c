"""Shared fixtures: small hand-written verifiers and protocol bundles."""

from fractions import Fraction

import pytest

from affineam.algebra import make_operator
from affineam.machine import (
    IDENTITY,
    LEFT_MARKER,
    RIGHT_MARKER,
    WEIGHT,
    ExplicitTable,
    Mode,
    RegisterSpec,
    VerifierSpec,
)
from affineam.protocols import build_kg, build_middle, build_mpal

THIRD = Fraction(1, 3)

SHIFT = make_operator([[1, 0, 0], [1, 1, 0], [-1, 0, 1]], name="A")


def coin_spec(restart: bool = True) -> VerifierSpec:
    """
    Two-way verifier that moves its register to (1, 1, -1) and weights it.

    Outcome 1 accepts, outcome 2 rejects, outcome 3 restarts (or rejects).
    """
    tape = (LEFT_MARKER, "0", RIGHT_MARKER)
    affine, classical = {}, {}
    for symbol in tape:
        affine[("start", symbol)] = ("A",)
        classical[("start", symbol, (0,))] = ("weigh", 0)
        affine[("weigh", symbol)] = (WEIGHT,)
        classical[("weigh", symbol, (1,))] = ("acc", 0)
        classical[("weigh", symbol, (2,))] = ("rej", 0)
        classical[("weigh", symbol, (3,))] = ("again" if restart else "rej", 0)
    table = ExplicitTable(
        initial="start",
        states=("start", "weigh", "acc", "rej") + (("again",) if restart else ()),
        accepting=frozenset({"acc"}),
        rejecting=frozenset({"rej"}),
        restarting=frozenset({"again"}) if restart else frozenset(),
        affine_map=affine,
        classical_map=classical,
    )
    return VerifierSpec(
        name="coin",
        mode=Mode.TWO_WAY,
        alphabet=("0",),
        comm_alphabet=(),
        registers=(RegisterSpec("r", 3, {"A": SHIFT}),),
        table=table,
    )


def counter_spec() -> VerifierSpec:
    """One-way verifier counting symbols; accepts only the empty word."""
    tape = (LEFT_MARKER, "0", RIGHT_MARKER)
    affine, classical = {}, {}
    for symbol in tape:
        affine[("run", symbol)] = (IDENTITY if symbol != "0" else "A",)
        classical[("run", symbol, (0,))] = ("done" if symbol == RIGHT_MARKER else "run", 1)
        affine[("done", symbol)] = (IDENTITY,)
        classical[("done", symbol, (0,))] = ("done", 1)
    table = ExplicitTable(
        initial="run",
        states=("run", "done"),
        accepting=frozenset({"done"}),
        affine_map=affine,
        classical_map=classical,
    )
    return VerifierSpec(
        name="counter",
        mode=Mode.ONE_WAY,
        alphabet=("0",),
        comm_alphabet=(),
        registers=(RegisterSpec("r", 3, {"A": SHIFT}),),
        table=table,
    )


@pytest.fixture
def coin():
    return coin_spec()


@pytest.fixture
def counter():
    return counter_spec()


@pytest.fixture(scope="session")
def middle():
    return build_middle(THIRD)


@pytest.fixture(scope="session")
def mpal():
    return build_mpal(("a", "b"), THIRD)


@pytest.fixture(scope="session")
def kg():
    return build_kg(THIRD)
