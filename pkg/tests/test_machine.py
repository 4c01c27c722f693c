"""Tests for verifier step semantics, compilation and validation."""

from dataclasses import replace
from fractions import Fraction

import pytest

import affineam.machine
from affineam.algebra import basis_state, make_state
from affineam.engine import ConstantProver, evaluate_exact
from affineam.errors import (
    BranchExplosionError,
    HeadBoundsError,
    InvalidReplySymbolError,
    MissingReplyError,
    ModeError,
)
from affineam.formats import dump_spec, load_spec
from affineam.machine import (
    IDENTITY,
    LEFT_MARKER,
    RIGHT_MARKER,
    WEIGHT,
    Event,
    EventKind,
    ExplicitTable,
    MachineConfiguration,
    Mode,
    Outcome,
    RegisterSpec,
    Transcript,
    compile_controller,
    final_weighting,
    initial_configuration,
    materialize,
    outcome_vectors,
    pad,
    step,
    validate,
)

from tests.conftest import SHIFT, THIRD, coin_spec


class Walker:
    """Moves right across the tape, tracking parity, and accepts at the end-marker."""

    initial = 0

    def outcome(self, state):
        return Outcome.ACCEPT if state == "end" else None

    def query(self, state):
        return None

    def on_reply(self, state, reply):
        raise AssertionError("no replies")

    def actions(self, state, symbol):
        return (SHIFT if symbol == "0" else IDENTITY,)

    def transition(self, state, symbol, taus):
        if symbol == RIGHT_MARKER:
            return "end", 0
        return 1 - state, 1


def walker_spec():
    return compile_controller(
        "walker", Mode.TWO_WAY, ("0",), (), (RegisterSpec("r", 3),), Walker()
    )


def test_initial_configuration(coin):
    cfg = initial_configuration(coin)
    assert cfg.state == "start"
    assert cfg.head == 0
    assert cfg.registers == (basis_state(3),)


def test_pad():
    assert pad("01") == (LEFT_MARKER, "0", "1", RIGHT_MARKER)


def test_non_weighting_step_is_certain(coin):
    (branch,) = step(coin, initial_configuration(coin), pad("0"))
    assert branch.probability == 1
    assert branch.configuration.registers == (make_state([1, 1, -1]),)
    assert branch.configuration.steps == 1
    assert not branch.is_leaf


def test_weighting_branches(coin):
    (first,) = step(coin, initial_configuration(coin), pad(""))
    branches = step(coin, first.configuration, pad(""))
    assert [b.probability for b in branches] == [THIRD] * 3
    assert [b.outcome for b in branches] == [Outcome.ACCEPT, Outcome.REJECT, Outcome.RESTART]
    assert [b.taus for b in branches] == [(1,), (2,), (3,)]
    assert branches[0].configuration.registers == (basis_state(3, 1),)


def test_one_way_rejects_outside_accepting_states(middle):
    spec = middle.verifier
    cfg = MachineConfiguration("before", 3, (basis_state(3),))
    (branch,) = step(spec, cfg, pad("01"))
    assert branch.outcome is Outcome.REJECT


def test_one_way_final_weighting(counter):
    assert evaluate_exact(counter, "", ConstantProver("x"), 10).p_accept == 1
    assert evaluate_exact(counter, "0", ConstantProver("x"), 10).p_accept == THIRD
    assert evaluate_exact(counter, "00", ConstantProver("x"), 10).p_accept == Fraction(1, 5)


def test_final_weighting_directly(counter):
    cfg = MachineConfiguration("done", 2, (make_state([1, 1, -1]),))
    branches = final_weighting(counter, cfg)
    accept = sum(b.probability for b in branches if b.outcome is Outcome.ACCEPT)
    assert accept == THIRD


def test_final_weighting_needs_one_way(coin):
    with pytest.raises(ModeError):
        final_weighting(coin, initial_configuration(coin))


def test_communication_needs_a_valid_reply(middle):
    spec = middle.verifier
    cfg = MachineConfiguration("ask", 1, (basis_state(3),))
    with pytest.raises(MissingReplyError):
        step(spec, cfg, pad("010"))
    with pytest.raises(InvalidReplySymbolError):
        step(spec, cfg, pad("010"), reply="maybe")
    (branch,) = step(spec, cfg, pad("010"), reply="no")
    assert branch.configuration.state == "before"
    assert branch.configuration.head == 1
    assert branch.configuration.exchanges == 1


def test_head_must_stay_on_the_padded_input():
    spec = coin_spec()
    classical = dict(spec.table.classical_map)
    classical[("start", LEFT_MARKER, (0,))] = ("weigh", -1)
    bad = replace(spec, table=replace(spec.table, classical_map=classical))
    with pytest.raises(HeadBoundsError):
        step(bad, initial_configuration(bad), pad("0"))
    assert "head-bounds" in {v.code for v in validate(bad)}


def test_validate_accepts_well_formed_specs(coin, counter, middle, mpal):
    assert validate(coin) == []
    assert validate(counter) == []
    assert validate(middle.verifier) == []
    assert validate(mpal.verifier) == []


def test_validate_flags_bad_column_sum(counter):
    text = dump_spec(counter).replace('"-1/1"', '"-9/10"', 1)
    violations = validate(load_spec(text))
    assert "column-sum" in {v.code for v in violations}


def test_validate_flags_missing_classical_transition(coin):
    classical = dict(coin.table.classical_map)
    del classical[("weigh", "0", (2,))]
    broken = replace(coin, table=replace(coin.table, classical_map=classical))
    assert [v.code for v in validate(broken)] == ["missing-classical"]


def test_validate_flags_one_way_weighting(counter):
    affine = dict(counter.table.affine_map)
    affine[("run", "0")] = (WEIGHT,)
    broken = replace(counter, table=replace(counter.table, affine_map=affine))
    assert "one-way-weighting" in {v.code for v in validate(broken)}


def test_outcome_vectors():
    registers = (RegisterSpec("a", 3), RegisterSpec("b", 2))
    assert outcome_vectors(registers, (WEIGHT, IDENTITY)) == [(1, 0), (2, 0), (3, 0)]
    assert len(outcome_vectors(registers, (WEIGHT, WEIGHT))) == 6


def test_compiled_controller_matches_its_materialization():
    spec = walker_spec()
    explicit = materialize(spec)
    assert isinstance(explicit.table, ExplicitTable)
    assert explicit.registers[0].operators == {"A": SHIFT}
    assert validate(explicit) == []
    assert validate(spec) == []
    for word in ("", "0", "000"):
        a = evaluate_exact(spec, word, ConstantProver("x"), 20)
        b = evaluate_exact(explicit, word, ConstantProver("x"), 20)
        assert a == b
        assert a.p_accept == 1


def test_materialize_respects_the_state_cap():
    with pytest.raises(BranchExplosionError):
        materialize(walker_spec(), state_cap=1)


def test_transcript_counters():
    t = Transcript.start("s")
    t = t.extend(Event(EventKind.QUERY, "ask", 1, symbol="middle?"))
    assert t.query == "middle?"
    t = t.extend(Event(EventKind.REPLY, "claim", 1, symbol="yes"))
    assert t.query is None
    assert t.replies == 1
    t = t.extend(Event(EventKind.STEP, "w", 1, taus=(0, 2)))
    assert t.outcomes == ((1, 2),)
    t = t.extend(Event(EventKind.RESTART, "s", 0))
    assert (t.rounds, t.replies, t.outcomes) == (1, 0, ())
    assert t.round_events() == []
    assert len(t) == 4
    assert [e.kind for e in t] == [
        EventKind.QUERY,
        EventKind.REPLY,
        EventKind.STEP,
        EventKind.RESTART,
    ]


def test_package_exports_resolve():
    missing = [name for name in affineam.machine.__all__ if not hasattr(affineam.machine, name)]
    assert missing == []
    assert "State" in affineam.machine.__all__
