"""
JSON file formats for verifier specs, Turing machines and reports.

Every rational is written as a "p/q" string, never as a float. Verifier
specs are always written in explicit form; compiled controllers are
materialized first.
"""

import json
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, Field, ValidationError

from affineam.algebra import AffineOperator
from affineam.algebra.rational import format_rational, parse_rational
from affineam.errors import ConfigError
from affineam.machine import ExplicitTable, Mode, RegisterSpec, VerifierSpec, materialize
from affineam.turing import Flavor, StateKind, TMAction, TuringMachineSpec

FORMAT_VERSION = 1


class OperatorModel(BaseModel):
    name: str
    rows: list[list[str]]


class RegisterModel(BaseModel):
    name: str
    dimension: int
    operators: list[OperatorModel] = Field(default=[])
    accepting: list[int] = Field(default=[1])


class AffineRecord(BaseModel):
    state: str
    symbol: str
    actions: list[str]


class ClassicalRecord(BaseModel):
    state: str
    symbol: str
    taus: list[int]
    target: str
    move: int


class ReplyRecord(BaseModel):
    state: str
    reply: str
    target: str


class VerifierSpecModel(BaseModel):
    """A verifier with explicit tables."""

    format_version: int = FORMAT_VERSION
    name: str
    mode: Mode
    alphabet: list[str]
    comm_alphabet: list[str]
    registers: list[RegisterModel]
    initial: str
    states: list[str]
    accepting: list[str] = Field(default=[])
    rejecting: list[str] = Field(default=[])
    restarting: list[str] = Field(default=[])
    writes: dict[str, str] = Field(default={})
    affine: list[AffineRecord] = Field(default=[])
    classical: list[ClassicalRecord] = Field(default=[])
    replies: list[ReplyRecord] = Field(default=[])
    labels: dict[str, str] = Field(default={})


class ActionModel(BaseModel):
    write: str
    state: str
    move: int


class TransitionModel(BaseModel):
    state: str
    symbol: str
    actions: list[ActionModel]


class MachineModel(BaseModel):
    """A Turing machine description."""

    format_version: int = FORMAT_VERSION
    name: str
    states: list[str]
    initial: str
    accept: str
    reject: str
    input_alphabet: list[str]
    tape_alphabet: list[str]
    transitions: list[TransitionModel]
    flavor: Flavor = Flavor.DETERMINISTIC
    kinds: dict[str, StateKind] = Field(default={})
    outputs: dict[str, str] = Field(default={})


class ReportRowModel(BaseModel):
    """One evaluated input."""

    word: str
    member: bool
    p_accept: str
    p_reject: str
    p_restart: str
    p_unresolved: str
    overall_accept: Optional[str] = None
    expected_steps: str
    bound: str
    satisfied: Optional[bool] = None
    nodes: int = 0
    note: str = ""
    variance_steps: Optional[str] = None
    samples: Optional[int] = None


class EvalReportModel(BaseModel):
    """Contents of summary.json."""

    format_version: int = FORMAT_VERSION
    config: dict
    protocol: str
    epsilon: str
    parameters: dict[str, str] = Field(default={})
    notes: list[str] = Field(default=[])
    total: int
    members: int
    violations: int
    rows: list[ReportRowModel]


# Verifier specs


def _operator_model(op: AffineOperator) -> OperatorModel:
    return OperatorModel(
        name=op.name, rows=[[format_rational(x) for x in row] for row in op.rows]
    )


def spec_to_model(spec: VerifierSpec) -> VerifierSpecModel:
    explicit = materialize(spec)
    table: ExplicitTable = explicit.table
    return VerifierSpecModel(
        name=explicit.name,
        mode=explicit.mode,
        alphabet=list(explicit.alphabet),
        comm_alphabet=list(explicit.comm_alphabet),
        registers=[
            RegisterModel(
                name=reg.name,
                dimension=reg.dimension,
                operators=[_operator_model(op) for op in reg.operators.values()],
                accepting=sorted(reg.accepting),
            )
            for reg in explicit.registers
        ],
        initial=table.initial,
        states=list(table.states),
        accepting=sorted(table.accepting),
        rejecting=sorted(table.rejecting),
        restarting=sorted(table.restarting),
        writes=dict(table.write_map),
        affine=[
            AffineRecord(state=state, symbol=symbol, actions=list(actions))
            for (state, symbol), actions in table.affine_map.items()
        ],
        classical=[
            ClassicalRecord(state=state, symbol=symbol, taus=list(taus), target=target, move=move)
            for (state, symbol, taus), (target, move) in table.classical_map.items()
        ],
        replies=[
            ReplyRecord(state=state, reply=reply, target=target)
            for (state, reply), target in table.reply_map.items()
        ],
        labels=dict(table.labels),
    )


def spec_from_model(model: VerifierSpecModel) -> VerifierSpec:
    """
    Build the spec without enforcing column sums, so validate() can report
    defective operators instead of the loader refusing them.
    """
    registers = tuple(
        RegisterSpec(
            name=reg.name,
            dimension=reg.dimension,
            operators={
                op.name: AffineOperator(
                    tuple(tuple(parse_rational(x) for x in row) for row in op.rows),
                    name=op.name,
                    strict=False,
                )
                for op in reg.operators
            },
            accepting=frozenset(reg.accepting),
        )
        for reg in model.registers
    )
    table = ExplicitTable(
        initial=model.initial,
        states=tuple(model.states),
        accepting=frozenset(model.accepting),
        rejecting=frozenset(model.rejecting),
        restarting=frozenset(model.restarting),
        affine_map={(r.state, r.symbol): tuple(r.actions) for r in model.affine},
        classical_map={
            (r.state, r.symbol, tuple(r.taus)): (r.target, r.move) for r in model.classical
        },
        write_map=dict(model.writes),
        reply_map={(r.state, r.reply): r.target for r in model.replies},
        labels=dict(model.labels),
    )
    return VerifierSpec(
        name=model.name,
        mode=model.mode,
        alphabet=tuple(model.alphabet),
        comm_alphabet=tuple(model.comm_alphabet),
        registers=registers,
        table=table,
    )


def dump_spec(spec: VerifierSpec) -> str:
    return spec_to_model(spec).model_dump_json(indent=2)


def load_spec(text: str) -> VerifierSpec:
    """
    Raises:
        ConfigError: On malformed JSON, a schema violation or a bad rational
    """
    model = _parse(VerifierSpecModel, text)
    try:
        return spec_from_model(model)
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"bad rational in an operator: {e}", field="registers") from None


# Turing machines


def machine_to_model(machine: TuringMachineSpec) -> MachineModel:
    return MachineModel(
        name=machine.name,
        states=list(machine.states),
        initial=machine.initial,
        accept=machine.accept,
        reject=machine.reject,
        input_alphabet=list(machine.input_alphabet),
        tape_alphabet=list(machine.tape_alphabet),
        transitions=[
            TransitionModel(
                state=state,
                symbol=symbol,
                actions=[
                    ActionModel(write=a.write, state=a.state, move=a.move) for a in actions
                ],
            )
            for (state, symbol), actions in machine.transitions.items()
        ],
        flavor=machine.flavor,
        kinds=dict(machine.kinds),
        outputs=dict(machine.outputs),
    )


def machine_from_model(model: MachineModel) -> TuringMachineSpec:
    return TuringMachineSpec(
        name=model.name,
        states=tuple(model.states),
        initial=model.initial,
        accept=model.accept,
        reject=model.reject,
        input_alphabet=tuple(model.input_alphabet),
        tape_alphabet=tuple(model.tape_alphabet),
        transitions={
            (t.state, t.symbol): tuple(TMAction(a.write, a.state, a.move) for a in t.actions)
            for t in model.transitions
        },
        flavor=model.flavor,
        kinds=dict(model.kinds),
        outputs=dict(model.outputs),
    )


def dump_machine(machine: TuringMachineSpec) -> str:
    return machine_to_model(machine).model_dump_json(indent=2)


def load_machine(text: str) -> TuringMachineSpec:
    """
    Raises:
        ConfigError: On malformed JSON or a schema violation
    """
    return machine_from_model(_parse(MachineModel, text))


def read_machine(path: Union[str, Path]) -> TuringMachineSpec:
    return load_machine(Path(path).read_text())


def read_spec(path: Union[str, Path]) -> VerifierSpec:
    return load_spec(Path(path).read_text())


def _parse(model: type[BaseModel], text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(e.msg, line=e.lineno) from None
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise ConfigError(first["msg"], field=field or None) from None
