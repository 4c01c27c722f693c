"""Tests for the experiment configuration."""

from fractions import Fraction

import pytest

from affineam.config import ExperimentConfig, get_default_config
from affineam.errors import ConfigError, EpsilonRangeError
from affineam.protocols import ContinuationOptions


def test_defaults():
    config = ExperimentConfig.from_dict({"inputs": {"all_up_to": 2}})
    assert config.protocol.name == "middle"
    assert config.protocol.epsilon == "1/3"
    assert config.protocol.epsilon_value == Fraction(1, 3)
    assert config.mode == "exact"
    assert config.engine.horizon is None
    assert config.sampling.seed == 0
    assert config.report.decimal_places == 6


def test_default_config_per_protocol():
    config = get_default_config("kg")
    assert config.protocol.name == "kg"
    assert config.inputs.all_up_to == 4


def test_default_config_unknown_protocol():
    with pytest.raises(ConfigError) as info:
        get_default_config("nope")
    assert info.value.field == "protocol.name"


def test_epsilon_is_normalized():
    config = ExperimentConfig.from_dict(
        {"protocol": {"epsilon": "2/6"}, "inputs": {"words": ["1"]}}
    )
    assert config.protocol.epsilon == "1/3"


@pytest.mark.parametrize("epsilon", ["2/3", "1/2", "0", "0.25"])
def test_epsilon_out_of_range(epsilon):
    with pytest.raises(EpsilonRangeError):
        ExperimentConfig.from_dict({"protocol": {"epsilon": epsilon}, "inputs": {"words": []}})


def test_inputs_required():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({})


@pytest.mark.parametrize(
    "data, field",
    [
        ({"engine": {"horizon": 0}}, "engine.horizon"),
        ({"engine": {"node_cap": 0}}, "engine.node_cap"),
        ({"sampling": {"trials": 0}}, "sampling.trials"),
        ({"mode": "fast"}, "mode"),
        ({"report": {"decimal_places": 31}}, "report.decimal_places"),
    ],
)
def test_invalid_fields(data, field):
    with pytest.raises(ConfigError) as info:
        ExperimentConfig.from_dict({**data, "inputs": {"words": ["1"]}})
    assert info.value.field == field


def test_continuation_options():
    config = ExperimentConfig.from_dict(
        {
            "protocol": {
                "name": "continuation",
                "continuation": {"case": "exponential", "k": 1, "c": 2},
            },
            "inputs": {"words": ["01"]},
        }
    )
    assert config.protocol.continuation.to_options() == ContinuationOptions(
        case="exponential", k=1, c=2, gadget="calibrated"
    )


def test_save_and_load(tmp_path):
    config = ExperimentConfig.from_dict(
        {"protocol": {"name": "mpal"}, "inputs": {"words": ["a$a"]}, "mode": "worst"}
    )
    path = tmp_path / "nested" / "experiment.json"
    config.save_to_file(path)
    assert ExperimentConfig.load_from_file(path) == config


def test_load_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig.load_from_file(tmp_path / "missing.json")


def test_yaml_is_rejected(tmp_path):
    path = tmp_path / "experiment.yaml"
    path.write_text("mode: exact\n")
    with pytest.raises(ConfigError):
        ExperimentConfig.load_from_file(path)


def test_json_error_reports_line(tmp_path):
    path = tmp_path / "experiment.json"
    path.write_text('{\n  "mode": "exact",\n}\n')
    with pytest.raises(ConfigError) as info:
        ExperimentConfig.load_from_file(path)
    assert info.value.line == 3
