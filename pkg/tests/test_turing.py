"""Tests for the Turing machine simulator and the bundled machines."""

from itertools import product

import pytest

from affineam.errors import AlphabetError, FlavorError, HaltedError
from affineam.turing import (
    TMAction,
    TMConfiguration,
    apply_action,
    check_machine,
    computation_tree,
    evaluate_alternating,
    get_machine,
    honest_stream,
    initial_config,
    next_config,
    normalize_alternating,
    reference_membership,
    run,
    sample_machines,
)

DETERMINISTIC = ("equal-blocks", "palindromes", "contains-one-reduction")


def words(length, alphabet=("0", "1")):
    for n in range(length + 1):
        for letters in product(alphabet, repeat=n):
            yield "".join(letters)


@pytest.fixture(scope="module")
def equal_blocks():
    return get_machine("equal-blocks")


def test_initial_configuration(equal_blocks):
    assert initial_config(equal_blocks, "01").text == "q0¢01$"
    assert initial_config(equal_blocks, "").text == "q0¢$"
    with pytest.raises(AlphabetError):
        initial_config(equal_blocks, "0q1")


def test_step_right(equal_blocks):
    assert next_config(equal_blocks, initial_config(equal_blocks, "01")).text == "¢q101$"


def test_step_left_and_in_place():
    config = TMConfiguration(("¢", "a", "b", "$"), "q2", 2)
    assert config.text == "¢aq2b$"
    assert apply_action(config, TMAction("c", "q3", -1)).text == "¢q3ac$"
    assert apply_action(config, TMAction("c", "q3", 0)).text == "¢aq3c$"
    assert apply_action(config, TMAction("c", "q3", 1)).text == "¢acq3$"


def test_honest_stream(equal_blocks):
    stream = honest_stream(equal_blocks, "01")
    assert stream.last.state == "qa"
    assert not stream.truncated
    assert honest_stream(equal_blocks, "0").last.state == "qr"
    short = honest_stream(equal_blocks, "01", max_steps=0)
    assert [c.text for c in short] == ["q0¢01$"]
    assert short.truncated


def test_halting_configuration_has_no_successor(equal_blocks):
    with pytest.raises(HaltedError):
        next_config(equal_blocks, honest_stream(equal_blocks, "01").last)


def test_runs(equal_blocks):
    assert run(equal_blocks, "0011") is True
    assert run(equal_blocks, "010") is False
    assert run(get_machine("palindromes"), "") is True
    assert run(equal_blocks, "0011", max_steps=3) is None


def test_alternating_stream_is_refused():
    with pytest.raises(FlavorError):
        honest_stream(get_machine("ones-at-both-ends"), "1")


def test_normalizer_needs_alternating_machine(equal_blocks):
    with pytest.raises(FlavorError):
        normalize_alternating(equal_blocks)


def test_catalog():
    machines = sample_machines()
    assert set(machines) == {*DETERMINISTIC, "ones-at-both-ends"}
    with pytest.raises(KeyError):
        get_machine("busy-beaver")


@pytest.mark.parametrize("name", sorted(sample_machines()))
def test_bundled_machines_are_well_formed(name):
    assert check_machine(get_machine(name)) == []


def test_config_alphabet_puts_boundaries_first(equal_blocks):
    assert equal_blocks.config_alphabet[:2] == ("$", "¢")
    assert equal_blocks.config_alphabet[-1] == "qr"


@pytest.mark.parametrize("name", DETERMINISTIC)
def test_streams_follow_the_successor_function(name):
    machine = get_machine(name)
    decide = reference_membership(name)
    for word in words(5):
        stream = honest_stream(machine, word)
        for before, after in zip(stream, list(stream)[1:]):
            assert next_config(machine, before) == after
        assert run(machine, word) is decide(word)


@pytest.mark.slow
@pytest.mark.parametrize("name", DETERMINISTIC)
def test_streams_up_to_length_eight(name):
    machine = get_machine(name)
    decide = reference_membership(name)
    for word in words(8):
        assert run(machine, word) is decide(word)


def test_alternating_machine_matches_its_language():
    machine = get_machine("ones-at-both-ends")
    decide = reference_membership("ones-at-both-ends")
    for word in words(5):
        assert evaluate_alternating(machine, word) is decide(word)


def test_alternating_leaves_have_equal_depth():
    machine = get_machine("ones-at-both-ends")
    for word in ("", "1", "101", "100"):
        leaves = computation_tree(machine, word)
        assert {len(path) for path, _ in leaves} == {2}
        assert all(machine.is_halting(config.state) for _, config in leaves)
