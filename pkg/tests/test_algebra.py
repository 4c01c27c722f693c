"""Tests for exact affine states, operators and weighting."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affineam.algebra import (
    apply,
    basis_state,
    compose,
    compose_all,
    format_rational,
    identity,
    inverse,
    linear_combination_gadget,
    make_operator,
    make_state,
    parse_rational,
    power,
    to_decimal,
    weight,
)
from affineam.algebra.rational import as_rational
from affineam.errors import DimensionError, NormalizationError, SingularError

A = make_operator([[1, 0, 0], [1, 1, 0], [-1, 0, 1]], name="A")

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def states(draw, dimension=3):
    head = draw(st.lists(small, min_size=dimension - 1, max_size=dimension - 1))
    return make_state([*head, 1 - sum(head, Fraction(0))])


@st.composite
def operators(draw, dimension=3):
    columns = [draw(states(dimension)).entries for _ in range(dimension)]
    return make_operator([[columns[j][i] for j in range(dimension)] for i in range(dimension)])


def test_states_must_sum_to_one():
    assert make_state([1, 0, 0]) == basis_state(3)
    assert make_state([1, 5, -5]).entries == (1, 5, -5)
    with pytest.raises(NormalizationError) as info:
        make_state([1, 1, 0])
    assert info.value.total == 2


def test_state_accepts_rational_strings():
    assert make_state(["1/2", "1/2"]).entries == (Fraction(1, 2), Fraction(1, 2))


def test_floats_are_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_operator_columns_must_sum_to_one():
    with pytest.raises(NormalizationError):
        make_operator([[1, 0], [1, 1]])
    loose = make_operator([[1, 0], [1, 1]], strict=False)
    assert loose.column_defects() == [(0, 2)]


def test_operator_must_be_square():
    with pytest.raises(DimensionError):
        make_operator([[1, 0], [0]])


def test_apply_counts_up():
    v = apply(A, basis_state(3))
    assert v.entries == (1, 1, -1)
    assert apply(A, v).entries == (1, 2, -2)
    assert apply(identity(3), v) == v


def test_apply_rejects_mismatched_sizes():
    with pytest.raises(DimensionError) as info:
        apply(A, basis_state(2))
    assert info.value.expected == 3


def test_compose_and_inverse():
    back = inverse(A)
    assert compose(back, A) == identity(3)
    assert compose(identity(3), A) == A
    assert apply(compose(A, A), basis_state(3)).entries == (1, 2, -2)
    assert back.name == "A^-1"


def test_compose_all_applies_left_to_right():
    B = make_operator([[0, 1, 0], [1, 0, 0], [0, 0, 1]], name="B")
    v = basis_state(3)
    assert apply(compose_all([A, B]), v) == apply(B, apply(A, v))


def test_singular_operator_has_no_inverse():
    with pytest.raises(SingularError):
        inverse(make_operator([[1, 1], [0, 0]]))


def test_power_matches_repeated_application():
    assert apply(power(A, 5), basis_state(3)).entries == (1, 5, -5)
    assert apply(power(A, -2), basis_state(3)).entries == (1, -2, 2)
    assert power(A, 0) == identity(3)


def test_weighting():
    dist = weight(basis_state(3))
    assert dist.probabilities == (1, 0, 0)
    assert dist.l1_norm == 1
    dist = weight(make_state([1, 1, -1]))
    assert dist.probabilities == (Fraction(1, 3),) * 3
    assert dist.l1_norm == 3
    assert dist.support() == [(1, Fraction(1, 3)), (2, Fraction(1, 3)), (3, Fraction(1, 3))]


def test_weighting_middle_soundness_value():
    # (1, m delta, -m delta) with m = delta = 1
    assert weight(make_state([1, 1, -1])).outcome(1) == Fraction(1, 3)


def test_linear_combination_gadget():
    gadget = linear_combination_gadget(2, [1, 1], constant=0)
    v = apply(gadget, make_state([1, 2, 3, 7, -12]))
    assert v.entries[3] == 5
    assert sum(v.entries) == 1

    gadget = linear_combination_gadget(1, [3], constant=0)
    v = apply(gadget, make_state([1, 4, 9, -13]))
    assert v.entries[2] == 12
    assert v.entries[:2] == (1, 4)


def test_gadget_needs_one_coefficient_per_input():
    with pytest.raises(DimensionError):
        linear_combination_gadget(2, [1])


def test_rational_text_form():
    assert format_rational(Fraction(2, 33)) == "2/33"
    assert format_rational(Fraction(1)) == "1/1"
    assert parse_rational(" 2/33 ") == Fraction(2, 33)
    assert to_decimal(Fraction(1, 3)) == "0.333333"
    assert to_decimal(Fraction(-2, 3), 2) == "-0.67"
    assert to_decimal(Fraction(5), 0) == "5"


@given(states(), operators())
def test_operators_preserve_normalization(v, op):
    assert sum(apply(op, v).entries) == 1


@given(operators())
def test_inverse_round_trip(op):
    try:
        back = inverse(op)
    except SingularError:
        return
    assert compose(back, op) == identity(3)
    assert compose(op, back) == identity(3)


@given(states())
def test_weighting_is_a_distribution(v):
    dist = weight(v)
    assert sum(dist.probabilities) == 1
    assert all(p >= 0 for p in dist.probabilities)


@given(st.integers(min_value=0, max_value=12))
def test_power_of_shift(m):
    assert apply(power(A, m), basis_state(3)).entries == (1, m, -m)


@pytest.mark.parametrize("m", range(-50, 51))
def test_power_of_shift_both_directions(m):
    assert apply(power(A, m), basis_state(3)).entries == (1, m, -m)
    assert compose(power(A, m), power(A, -m)) == identity(3)


@pytest.mark.slow
@settings(max_examples=10_000, deadline=None)
@given(states(), operators())
def test_operators_preserve_normalization_at_scale(v, op):
    assert sum(apply(op, v).entries) == 1
    assert sum(weight(apply(op, v)).probabilities) == 1


@pytest.mark.slow
@settings(max_examples=10_000, deadline=None)
@given(operators(), operators(), states())
def test_compose_and_inverse_at_scale(f, g, v):
    assert apply(compose(g, f), v) == apply(g, apply(f, v))
    try:
        back = inverse(f)
    except SingularError:
        return
    assert apply(back, apply(f, v)) == v
