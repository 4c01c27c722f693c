"""
Verifier for configuration streams of a Turing machine.

The prover sends c_0 # c_1 # ... one symbol per exchange. Two 4-state
registers X and Y take turns: while block i streams in, the current one
appends val(c_i) to entry 3 with the B operators and the other appends
val(next(c_i)) to entry 2 with the A operators. next(c_i) is produced on
the fly: cell symbols are held back one step, so once the state q and the
scanned symbol v_1 are known the boundary symbols can be appended in the
order the move requires. At # the current register holds
(1, val(next(c_{i-1})), val(c_i), bal); T_C and S turn it into
(1, C Delta, -C Delta, 0), which is then weighted. A passed comparison
collapses the register to e_1, ready for the next block.

Head modes decide what the input head does after c_0 has been checked
against the tape: stay on the right end-marker (idle), walk across the
input once per configuration to force length |w|+3 (length), or sweep
the input to drive a continuation check (scan).
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Literal, Optional

from affineam.algebra import AffineOperator, compose, compose_all, make_operator
from affineam.encoders import digit_append, ratio_operator
from affineam.errors import MachineError, TuringError
from affineam.machine import (
    IDENTITY,
    LEFT_MARKER,
    RIGHT_MARKER,
    WEIGHT,
    Mode,
    Outcome,
    RegisterSpec,
    State,
    VerifierSpec,
    compile_controller,
)
from affineam.protocols.continuation import ContinuationCheck
from affineam.protocols.knapsack import END, KGState, KnapsackLogic, coin_operator
from affineam.protocols.models import (
    ASK_BIT,
    ASK_CHOICE,
    ASK_SYMBOL,
    CHOICE_SYMBOLS,
    HALF,
    SEPARATOR,
    check_epsilon,
)
from affineam.turing import (
    TM_LEFT,
    TM_RIGHT,
    Flavor,
    StateKind,
    TMAction,
    TuringMachineSpec,
    check_machine,
)

logger = logging.getLogger(__name__)

HeadMode = Literal["idle", "length", "scan"]

ASK = "ask"
CHOOSE = "choose"
TAKE = "take"
COMPARE = "compare"
COIN = "coin"
FINAL = "final"
KG = "kg"
KG_BIT = "kg-bit"
PROBE = "probe"
WEIGH = "weigh"
RESET = "reset"
REWIND = "rewind"
HALT = "halt"


def amplify_operator(c: Fraction) -> AffineOperator:
    """T_C: scale entries 2 and 3 by C."""
    return make_operator(
        [[1, 0, 0, 0], [0, c, 0, 0], [0, 0, c, 0], [0, 1 - c, 1 - c, 1]], name="T_C"
    )


def difference_operator() -> AffineOperator:
    """S: (1, a, b, bal) -> (1, a - b, b - a, a + b + bal)."""
    return make_operator(
        [[1, 0, 0, 0], [0, 1, -1, 0], [0, -1, 1, 0], [0, 1, 1, 1]], name="S"
    )


def boundary_order(left: Optional[str], action: TMAction) -> tuple[str, ...]:
    """
    Symbols replacing u_last q v_1 in next(c), left to right.

    For t = -1 the new state moves in front of u_last; for t = 0 it stays
    in front of the rewritten cell; for t = +1 it follows it.
    """
    if action.move < 0:
        order = (action.state, left, action.write)
    elif action.move == 0:
        order = (left, action.state, action.write)
    else:
        order = (left, action.write, action.state)
    return tuple(symbol for symbol in order if symbol is not None)


@dataclass(frozen=True)
class RestartRule:
    """
    Restart-on-accept register of the alternating protocol.

    Attributes:
        ratio: Factor applied per prover symbol
        delta: Extra factor on the accepting configuration
    """

    ratio: Fraction = HALF
    delta: Fraction = Fraction(1, 3)


@dataclass(frozen=True)
class StreamState:
    """
    Finite control of the stream verifier.

    Attributes:
        phase: What the next step does
        first: Reading c_0
        parity: Current register, 0 for X and 1 for Y
        pending: Prover symbol waiting to be consumed
        prev: Cell symbol held back from next(c)
        state: Machine state of the current block
        emitted: The boundary symbols of next(c) are appended
        left: ¢ seen in this block
        right: $ seen in this block
        choice: Branch taken at this block's state
        fresh: Scan mode: the next cell starts a sweep
        kg: Knapsack-game check fed with output symbols
        verdict: Set on halting states
    """

    phase: str = ASK
    first: bool = True
    parity: int = 0
    pending: Optional[str] = None
    prev: Optional[str] = None
    state: Optional[str] = None
    emitted: bool = False
    left: bool = False
    right: bool = False
    choice: int = 0
    fresh: bool = True
    kg: Optional[KGState] = None
    verdict: Optional[Outcome] = None


class StreamController:
    """
    Stream verifier as a compiled controller.

    Args:
        machine: The machine whose computation is streamed
        epsilon: Error bound; C = (1 - epsilon) / (2 epsilon)
        head_mode: "idle", "length" or "scan"
        check: Continuation check (scan mode only)
        restart: Restart-on-accept rule (alternating machines)
        knapsack: Knapsack-game check fed with the machine's output symbols
    """

    def __init__(
        self,
        machine: TuringMachineSpec,
        epsilon: Fraction,
        head_mode: HeadMode = "idle",
        check: Optional[ContinuationCheck] = None,
        restart: Optional[RestartRule] = None,
        knapsack: Optional[KnapsackLogic] = None,
    ):
        if (check is not None) != (head_mode == "scan"):
            raise ValueError("a continuation check needs scan mode and vice versa")
        self.machine = machine
        self.epsilon = check_epsilon(epsilon)
        self.amplification = (1 - self.epsilon) / (2 * self.epsilon)
        self.head_mode = head_mode
        self.check = check
        self.restart = restart
        self.knapsack = knapsack
        self.alternating = machine.flavor is Flavor.ALTERNATING
        if self.alternating and knapsack is not None:
            raise ValueError("the knapsack check runs on deterministic reductions only")
        self.initial = StreamState(kg=KGState() if knapsack is not None else None)

        alphabet = machine.config_alphabet
        self.base = len(alphabet)
        self.append_next = {
            symbol: digit_append(self.base, digit, target=2, dimension=4)
            for digit, symbol in enumerate(alphabet)
        }
        self.append_current = {
            symbol: digit_append(self.base, digit, target=3, dimension=4)
            for digit, symbol in enumerate(alphabet)
        }
        self.compare = compose(
            difference_operator(), amplify_operator(self.amplification), name="S*T_C"
        )
        self.prepare = coin_operator()
        if restart is not None:
            self.halve = ratio_operator(restart.ratio)
            self.halve_and_scale = compose(
                ratio_operator(restart.delta, name="M_delta"), self.halve
            )
        self._boundaries: dict = {}

        roles = ["X", "Y"]
        if check is not None:
            roles.append("check")
        if self.alternating:
            roles.append("coin")
        if restart is not None:
            roles.append("restart")
        if knapsack is not None:
            roles.extend(KnapsackLogic.ROLES)
        self.roles = tuple(roles)

    def registers(self) -> tuple[RegisterSpec, ...]:
        sizes = {"X": 4, "Y": 4, "work": 4, "coin": 2, "restart": 2}
        if self.check is not None:
            sizes["check"] = self.check.dimension
        return tuple(RegisterSpec(role, sizes[role]) for role in self.roles)

    def comm_alphabet(self) -> tuple[str, ...]:
        extra = CHOICE_SYMBOLS if self.alternating or self.knapsack is not None else ()
        return (*self.machine.config_alphabet, SEPARATOR, *extra)

    def register_index(self, role: str) -> int:
        return self.roles.index(role)

    # Controller protocol

    def outcome(self, s: State) -> Optional[Outcome]:
        return s.verdict

    def query(self, s: State) -> Optional[str]:
        return {ASK: ASK_SYMBOL, CHOOSE: ASK_CHOICE, KG_BIT: ASK_BIT}.get(s.phase)

    def on_reply(self, s: State, reply: str) -> State:
        if s.phase == ASK:
            return replace(s, phase=TAKE, pending=reply)
        if s.phase == CHOOSE:
            if reply not in CHOICE_SYMBOLS:
                return self._halt(Outcome.REJECT)
            return self._ask(replace(s, choice=CHOICE_SYMBOLS.index(reply)))
        if s.phase == KG_BIT:
            return self._continue_knapsack(replace(s, kg=self.knapsack.answer(s.kg, reply)))
        raise MachineError(f"phase {s.phase} does not take replies")

    def actions(self, s: State, under: str) -> tuple:
        found: dict = {}
        if s.phase == TAKE:
            found = self._take(s, under)[0]
        elif s.phase == COMPARE:
            found = {self._current(s): WEIGHT}
        elif s.phase == COIN:
            found = {"coin": WEIGHT}
        elif s.phase == FINAL:
            found = {"restart": WEIGHT}
        elif s.phase == KG:
            found = self.knapsack.task_actions(s.kg)
        elif s.phase == PROBE and under == RIGHT_MARKER:
            found = {"check": self.check.end}
        elif s.phase == WEIGH:
            found = {"check": WEIGHT}
        elif s.phase == RESET:
            found = {"check": self.check.reset}
        return tuple(found.get(role, IDENTITY) for role in self.roles)

    def transition(self, s: State, under: str, taus: tuple[int, ...]) -> tuple[State, int]:
        got = dict(zip(self.roles, taus))
        if s.phase == TAKE:
            _, target, move = self._take(s, under)
            return target, move
        if s.phase == COMPARE:
            if got[self._current(s)] != 1:
                return self._halt(Outcome.REJECT), 0
            return self._passed(s), 0
        if s.phase == COIN:
            return self._ask(replace(s, choice=got["coin"] - 1)), 0
        if s.phase == FINAL:
            verdict = Outcome.ACCEPT if got["restart"] == 1 else Outcome.RESTART
            return self._halt(verdict), 0
        if s.phase == KG:
            kg = self.knapsack.resolve(s.kg, {role: got[role] for role in KnapsackLogic.ROLES})
            return self._continue_knapsack(replace(s, kg=kg)), 0
        if s.phase == PROBE:
            if under == RIGHT_MARKER:
                return replace(s, phase=WEIGH), 0
            if under == LEFT_MARKER:
                return s, 1
            return replace(s, phase=ASK), 0
        if s.phase == WEIGH:
            if got["check"] == 1:
                return self._halt(Outcome.REJECT), 0
            return replace(s, phase=RESET), 0
        if s.phase == RESET:
            return replace(s, phase=REWIND), 0 if under == LEFT_MARKER else -1
        if s.phase == REWIND:
            if under != LEFT_MARKER:
                return s, -1
            if self.head_mode == "scan":
                return replace(s, phase=PROBE, fresh=True), 1
            return replace(s, phase=ASK), 0
        raise MachineError(f"phase {s.phase} has no tape step")

    def label(self, s: State) -> str:
        if s.verdict is not None:
            return s.verdict.value
        block = "c0" if s.first else "XY"[s.parity]
        parts = [s.phase, block]
        if s.pending is not None:
            parts.append(f"got={s.pending}")
        if s.state is not None:
            parts.append(f"q={s.state}")
        if s.prev is not None:
            parts.append(f"prev={s.prev}")
        if s.kg is not None:
            parts.append(f"kg={s.kg.section}{'/' + s.kg.task if s.kg.task else ''}")
        return " ".join(parts)

    # steps

    def _take(self, s: StreamState, under: str) -> tuple[dict, StreamState, int]:
        machine = self.machine
        token = s.pending
        s = replace(s, pending=None)
        if not self._well_formed(s, token):
            return {}, self._halt(Outcome.REJECT), 0

        found: dict = {}
        if self.restart is not None:
            found["restart"] = self.halve
        if s.first or self.head_mode == "length":
            move = self._walk(s, token, under)
            if move is None:
                return {}, self._halt(Outcome.REJECT), 0
        elif self.head_mode == "scan" and under not in (LEFT_MARKER, RIGHT_MARKER):
            found["check"] = self.check.first if s.fresh else self.check.cell
            s = replace(s, fresh=False)
            move = 1
        else:
            move = 0

        current, other = self._current(s), self._other(s)
        if token == SEPARATOR:
            if not s.first:
                found[current] = self.compare
            if self.restart is not None and s.state == machine.accept:
                found["restart"] = self.halve_and_scale
            if self.knapsack is not None:
                symbol = END if s.state == machine.accept else machine.output_of(s.state)
                if symbol is not None:
                    kg, kg_actions = self.knapsack.feed(s.kg, symbol)
                    found.update(kg_actions)
                    s = replace(s, kg=kg)
            if s.first:
                return found, self._passed(s), move
            return found, replace(s, phase=COMPARE), move

        if not s.first:
            found[current] = self.append_current[token]

        if token in machine.states:
            s = replace(s, state=token)
            if self.alternating and not machine.is_halting(token):
                kind = machine.kind(token)
                if kind is StateKind.UNIVERSAL:
                    found["coin"] = self.prepare
                    return found, replace(s, phase=COIN), move
                if kind is StateKind.EXISTENTIAL:
                    return found, replace(s, phase=CHOOSE), move
            return found, self._ask(s), move

        left = s.left or token == TM_LEFT
        right = s.right or token == TM_RIGHT
        if s.state is None:
            if s.prev is not None:
                found[other] = self.append_next[s.prev]
            s = replace(s, prev=token, left=left, right=right)
        elif not s.emitted:
            if not machine.is_halting(s.state):
                found[other] = self._boundary(s.prev, s.state, token, s.choice)
            s = replace(s, prev=None, emitted=True, left=left, right=right)
        else:
            if not machine.is_halting(s.state):
                found[other] = self.append_next[token]
            s = replace(s, left=left, right=right)
        return found, self._ask(s), move

    def _well_formed(self, s: StreamState, token: str) -> bool:
        machine = self.machine
        if s.right:
            return token == SEPARATOR
        if token == SEPARATOR:
            return False
        if token in machine.states:
            if s.state is not None:
                return False
            return not s.first or (token == machine.initial and not s.left)
        if token == TM_LEFT:
            return not s.left
        if token == TM_RIGHT:
            return s.left and s.state is not None
        return token in machine.tape_alphabet and s.left

    def _walk(self, s: StreamState, token: str, under: str) -> Optional[int]:
        """Head move that keeps configuration cells aligned with the tape, or None."""
        if token in self.machine.states or token == SEPARATOR:
            return 0
        if token == TM_LEFT:
            return 1 if under == LEFT_MARKER else None
        if token == TM_RIGHT:
            return 0 if under == RIGHT_MARKER else None
        if under in (LEFT_MARKER, RIGHT_MARKER):
            return None
        if s.first and token != under:
            return None
        return 1

    def _boundary(self, left: Optional[str], state: str, scanned: str, choice: int):
        options = self.machine.actions(state, scanned)
        action = options[choice] if len(options) > 1 else options[0]
        order = boundary_order(left, action)
        try:
            return self._boundaries[order]
        except KeyError:
            op = compose_all(
                [self.append_next[symbol] for symbol in order],
                name="NEXT[" + " ".join(order) + "]",
            )
            self._boundaries[order] = op
            return op

    def _passed(self, s: StreamState) -> StreamState:
        machine = self.machine
        if s.state == machine.reject:
            return self._halt(Outcome.REJECT)
        if s.state == machine.accept:
            if self.restart is not None:
                return replace(s, phase=FINAL)
            if self.knapsack is not None:
                return self._continue_knapsack(s)
            return self._halt(Outcome.ACCEPT)
        if self.knapsack is not None:
            return self._continue_knapsack(s)
        return self._next_block(s)

    def _continue_knapsack(self, s: StreamState) -> StreamState:
        kg = s.kg
        if kg.verdict is not None:
            return self._halt(kg.verdict)
        if kg.task == "bit":
            return replace(s, phase=KG_BIT)
        if kg.task is not None:
            return replace(s, phase=KG)
        return self._next_block(s)

    def _next_block(self, s: StreamState) -> StreamState:
        block = StreamState(
            phase=ASK,
            first=False,
            parity=1 - s.parity,
            fresh=True if s.first else s.fresh,
            kg=s.kg,
        )
        if self.head_mode == "length" or (self.head_mode == "scan" and s.first):
            return replace(block, phase=REWIND)
        return self._ask(block)

    def _ask(self, s: StreamState) -> StreamState:
        if self.head_mode == "scan" and not s.first:
            return replace(s, phase=PROBE)
        return replace(s, phase=ASK)

    @staticmethod
    def _halt(verdict: Outcome) -> StreamState:
        return StreamState(phase=HALT, verdict=verdict)

    @staticmethod
    def _current(s: StreamState) -> str:
        return "XY"[s.parity]

    @staticmethod
    def _other(s: StreamState) -> str:
        return "XY"[1 - s.parity]


def check_stream_machine(machine: TuringMachineSpec) -> None:
    """
    Raises:
        TuringError: If the machine is malformed or its names clash with
            the stream's control symbols
    """
    problems = check_machine(machine)
    reserved = {SEPARATOR, *CHOICE_SYMBOLS}
    clashes = reserved & set(machine.config_alphabet)
    if clashes:
        problems.append(f"names {sorted(clashes)} are reserved by the stream")
    if problems:
        raise TuringError(f"{machine.name}: " + "; ".join(problems))


def stream_verifier(name: str, controller: StreamController) -> VerifierSpec:
    """Compile a stream controller over the machine's input alphabet."""
    spec = compile_controller(
        name=name,
        mode=Mode.TWO_WAY,
        alphabet=controller.machine.input_alphabet,
        comm_alphabet=controller.comm_alphabet(),
        registers=controller.registers(),
        controller=controller,
    )
    logger.debug(
        "%s over %s: base %d, registers %s",
        name,
        controller.machine.name,
        controller.base,
        ", ".join(controller.roles),
    )
    return spec
