"""
Experiment configuration for AffineAM.

Every rational is kept as an exact "p/q" string on disk and checked when
the configuration is loaded, so a bad error bound fails before any
evaluation starts.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from affineam.algebra.rational import format_rational
from affineam.errors import ConfigError
from affineam.protocols import PROTOCOL_NAMES, ContinuationOptions, check_epsilon

EvalMode = Literal["exact", "worst", "mc", "rounds"]


class EngineConfig(BaseModel):
    """Limits of the game-tree evaluators."""

    horizon: Optional[int] = Field(
        default=None,
        description="Maximum transitions per run (default: the protocol's own bound)",
    )
    node_cap: int = Field(
        default=200_000,
        description="Maximum live frontier (exact) or memoized nodes (worst case)",
    )
    dedup: bool = Field(
        default=True,
        description="Merge nodes with equal configuration and prover view",
    )

    @field_validator("horizon")
    @classmethod
    def validate_horizon(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError("horizon must be at least 1")
        return v

    @field_validator("node_cap")
    @classmethod
    def validate_node_cap(cls, v: int) -> int:
        if v < 1:
            raise ValueError("node_cap must be at least 1")
        return v


class SamplingConfig(BaseModel):
    """Monte Carlo settings."""

    trials: int = Field(
        default=10_000,
        description="Number of sampled runs per input",
    )
    seed: int = Field(
        default=0,
        description="Seed of the verifier's coins",
    )

    @field_validator("trials")
    @classmethod
    def validate_trials(cls, v: int) -> int:
        if v < 1:
            raise ValueError("trials must be at least 1")
        return v


class ReportConfig(BaseModel):
    """Where and how results are written."""

    output_path: Path = Field(
        default=Path("./results"),
        description="Directory for report.csv and summary.json",
    )
    decimal_places: int = Field(
        default=6,
        description="Places of the decimal columns",
    )
    write_csv: bool = Field(
        default=True,
        description="Write report.csv",
    )
    write_json: bool = Field(
        default=True,
        description="Write summary.json",
    )

    @field_validator("decimal_places")
    @classmethod
    def validate_places(cls, v: int) -> int:
        if not 0 <= v <= 30:
            raise ValueError("decimal_places must lie in [0, 30]")
        return v


class ContinuationConfig(BaseModel):
    """Declared budget c |w|^k or c 2^{k|w|} of a continuation check."""

    case: Literal["polynomial", "exponential"] = Field(
        default="polynomial",
        description="Shape of the budget",
    )
    k: int = Field(
        default=3,
        description="Exponent of the budget",
    )
    c: int = Field(
        default=16,
        description="Constant of the budget",
    )
    gadget: Literal["literal", "calibrated"] = Field(
        default="calibrated",
        description="End gadget of the polynomial register",
    )

    @field_validator("k", "c")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("k and c must be positive")
        return v

    def to_options(self) -> ContinuationOptions:
        return ContinuationOptions(case=self.case, k=self.k, c=self.c, gadget=self.gadget)


class ProtocolConfig(BaseModel):
    """Which protocol to build and with which parameters."""

    name: str = Field(
        default="middle",
        description="Protocol name from the catalog",
    )
    epsilon: str = Field(
        default="1/3",
        description="Error bound as an exact 'p/q' string in (0, 1/2)",
    )
    alphabet: Optional[list[str]] = Field(
        default=None,
        description="Input alphabet (middle, mpal)",
    )
    marked_symbol: Optional[str] = Field(
        default=None,
        description="Marked middle symbol (middle)",
    )
    machine: Optional[str] = Field(
        default=None,
        description="Bundled machine name or path to a machine JSON file",
    )
    continuation: ContinuationConfig = Field(default_factory=ContinuationConfig)
    reading: Literal["marked", "existential"] = Field(
        default="marked",
        description="Reading of the middle symbol (middle, mpal)",
    )

    @field_validator("name")
    @classmethod
    def validate_name(cls, v: str) -> str:
        if v not in PROTOCOL_NAMES:
            raise ValueError(f"unknown protocol '{v}'; choose from {', '.join(PROTOCOL_NAMES)}")
        return v

    @field_validator("epsilon", mode="before")
    @classmethod
    def validate_epsilon(cls, v) -> str:
        """Raises EpsilonRangeError directly so callers see it before any run."""
        return format_rational(check_epsilon(str(v)))

    @property
    def epsilon_value(self) -> Fraction:
        return Fraction(self.epsilon)


class InputSetConfig(BaseModel):
    """The words an experiment evaluates."""

    words: list[str] = Field(
        default=[],
        description="Explicit input words",
    )
    all_up_to: Optional[int] = Field(
        default=None,
        description="Also every word over the protocol alphabet up to this length",
    )

    @field_validator("all_up_to")
    @classmethod
    def validate_length(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 0:
            raise ValueError("all_up_to must not be negative")
        return v


class ExperimentConfig(BaseModel):
    """Main configuration of one experiment."""

    protocol: ProtocolConfig = Field(default_factory=ProtocolConfig)
    inputs: InputSetConfig = Field(default_factory=InputSetConfig)
    mode: EvalMode = Field(
        default="exact",
        description="exact (honest prover), worst (optimal cheating prover), mc, rounds",
    )
    engine: EngineConfig = Field(default_factory=EngineConfig)
    sampling: SamplingConfig = Field(default_factory=SamplingConfig)
    report: ReportConfig = Field(default_factory=ReportConfig)

    @model_validator(mode="after")
    def validate_inputs(self) -> "ExperimentConfig":
        if not self.inputs.words and self.inputs.all_up_to is None:
            raise ValueError("give input words or all_up_to")
        return self

    def ensure_directories(self) -> None:
        self.report.output_path.mkdir(parents=True, exist_ok=True)

    @classmethod
    def load_from_file(cls, path: Path) -> "ExperimentConfig":
        """
        Load a JSON configuration.

        Raises:
            ConfigError: With the line of a JSON syntax error or the field of
                a validation error
            EpsilonRangeError: If the error bound is out of range
        """
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        if path.suffix in [".yaml", ".yml"]:
            raise ConfigError("YAML not supported. Please use JSON config files.")
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise ConfigError(e.msg, line=e.lineno) from None
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        try:
            return cls(**data)
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(part) for part in first["loc"])
            raise ConfigError(first["msg"], field=field or None) from None

    def save_to_file(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump(self.model_dump(mode="json"), f, indent=2)
            f.write("\n")


def get_default_config(protocol_name: str) -> ExperimentConfig:
    """Default experiment for a protocol: every word up to length 4, honest prover."""
    return ExperimentConfig.from_dict(
        {"protocol": {"name": protocol_name}, "inputs": {"all_up_to": 4}}
    )
