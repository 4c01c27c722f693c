"""Tests for the JSON spec and machine formats."""

import json

import pytest

from affineam.errors import ConfigError
from affineam.formats import (
    dump_machine,
    dump_spec,
    load_machine,
    load_spec,
    read_machine,
    read_spec,
)
from affineam.machine import materialize, validate
from affineam.turing import get_machine, machine_names

from tests.conftest import coin_spec


def test_explicit_spec_round_trip(middle):
    assert load_spec(dump_spec(middle.verifier)) == middle.verifier


def test_compiled_spec_round_trip(kg):
    assert load_spec(dump_spec(kg.verifier)) == materialize(kg.verifier)


def test_round_trip_keeps_restart_states():
    spec = coin_spec()
    loaded = load_spec(dump_spec(spec))
    assert loaded == spec
    assert loaded.table.restarting == frozenset({"again"})


def test_rationals_are_written_as_fractions(mpal):
    data = json.loads(dump_spec(mpal.verifier))
    entries = [
        x
        for register in data["registers"]
        for op in register["operators"]
        for row in op["rows"]
        for x in row
    ]
    assert entries
    assert all("/" in x and "." not in x for x in entries)


def test_read_spec(tmp_path, middle):
    path = tmp_path / "middle.json"
    path.write_text(dump_spec(middle.verifier))
    spec = read_spec(path)
    assert spec == middle.verifier
    assert validate(spec) == []


def test_malformed_json_reports_line():
    with pytest.raises(ConfigError) as info:
        load_spec('{\n  "name": "x",\n}\n')
    assert info.value.line == 3
    assert "line 3" in str(info.value)


def test_missing_field_reports_field():
    with pytest.raises(ConfigError) as info:
        load_spec('{"name": "x"}')
    assert info.value.field == "mode"


def test_bad_rational_in_operator(middle):
    text = dump_spec(middle.verifier).replace('"-1/1"', '"0.5"', 1)
    with pytest.raises(ConfigError) as info:
        load_spec(text)
    assert info.value.field == "registers"


def test_defective_operator_loads_for_validation(counter):
    text = dump_spec(counter).replace('"-1/1"', '"-9/10"', 1)
    codes = {violation.code for violation in validate(load_spec(text))}
    assert "column-sum" in codes


@pytest.mark.parametrize("name", machine_names())
def test_machine_round_trip(name):
    machine = get_machine(name)
    assert load_machine(dump_machine(machine)) == machine


def test_read_machine(tmp_path):
    machine = get_machine("ones-at-both-ends")
    path = tmp_path / "atm.json"
    path.write_text(dump_machine(machine))
    assert read_machine(path) == machine


def test_machine_schema_error():
    with pytest.raises(ConfigError) as info:
        load_machine('{"name": "m", "states": ["q0"]}')
    assert info.value.field == "initial"
