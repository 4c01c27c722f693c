"""
Verifier for the knapsack game.

The verifier keeps (1, S - chosen so far, next number, bal) in a 4-state
work register: digits of S go into entry 2, the chosen number of a pair
into entry 3, and D subtracts entry 3 from entry 2. Universal choices come
from a public coin, existential ones from the prover. At the end the work
register is weighted; outcome 1 survives with probability 1/(1 + 2|R|) for
the residue R, and a restart register turns that into rare acceptance and
frequent restarts.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from affineam.algebra import AffineOperator, make_operator
from affineam.algebra.rational import RationalInput
from affineam.encoders import digit_append, ratio_operator
from affineam.errors import MachineError
from affineam.machine import (
    IDENTITY,
    LEFT_MARKER,
    RIGHT_MARKER,
    WEIGHT,
    Mode,
    Outcome,
    RegisterSpec,
    State,
    compile_controller,
)
from affineam.protocols.instances import COMMA, EXISTENTIAL, KG_ALPHABET, UNIVERSAL, kg_member
from affineam.protocols.models import ASK_BIT, HALF, ProtocolBundle, check_epsilon
from affineam.protocols.provers import KnapsackProver

logger = logging.getLogger(__name__)

END = "END"


def subtract_operator() -> AffineOperator:
    """D: entry 2 <- entry 2 - entry 3, entry 3 <- 0."""
    return make_operator(
        [[1, 0, 0, 0], [0, 1, -1, 0], [0, 0, 0, 0], [0, 0, 2, 1]], name="D"
    )


def coin_operator() -> AffineOperator:
    """Prepares (1/2, 1/2) from any basis state."""
    return make_operator([[HALF, HALF], [HALF, HALF]], name="PREP")


@dataclass(frozen=True)
class KGState:
    """
    Finite control of the knapsack-game check.

    Attributes:
        section: "S", "first" or "second" number of a pair, or "end"
        kind: Quantifier of the current pair
        choice: 0 for the first number, 1 for the second
        digits: At least one digit of the current number was read
        dirty: Entry 3 holds a number not yet subtracted
        nonzero: S has a 1 digit
        task: Pending internal step: "coin", "bit", "work" or "restart"
        verdict: Set once the check has decided
    """

    section: str = "S"
    kind: Optional[str] = None
    choice: int = 0
    digits: bool = False
    dirty: bool = False
    nonzero: bool = False
    task: Optional[str] = None
    verdict: Optional[Outcome] = None


class KnapsackLogic:
    """
    The knapsack-game check as a reusable piece of finite control.

    Symbols are fed one at a time with ``feed``; some symbols leave an
    internal task that the host verifier runs before feeding the next one.
    Actions are returned per role ("work", "coin", "restart") and the host
    maps roles to its registers.
    """

    ROLES = ("work", "coin", "restart")

    def __init__(self, epsilon: RationalInput, choice_symbols: Sequence[str] = ("0", "1")):
        self.epsilon = check_epsilon(epsilon)
        self.delta = 2 * self.epsilon / 3
        self.choice_symbols = tuple(choice_symbols)
        self.subtract = subtract_operator()
        self.prepare = coin_operator()
        self.halve = ratio_operator(HALF)
        self.scale = ratio_operator(self.delta, name="M_delta")
        self.append_target = {d: digit_append(2, int(d), target=2, dimension=4) for d in "01"}
        self.append_chosen = {d: digit_append(2, int(d), target=3, dimension=4) for d in "01"}

    def registers(self) -> tuple[RegisterSpec, RegisterSpec, RegisterSpec]:
        return (
            RegisterSpec("work", 4),
            RegisterSpec("coin", 2),
            RegisterSpec("restart", 2),
        )

    def feed(self, kg: KGState, symbol: str) -> tuple[KGState, dict]:
        """Consume one instance symbol, or END."""
        if kg.task is not None or kg.verdict is not None:
            raise MachineError(f"knapsack check fed {symbol!r} while busy")
        if symbol in ("0", "1"):
            if kg.section == "S":
                nonzero = kg.nonzero or symbol == "1"
                action = self.append_target[symbol]
                return replace(kg, digits=True, nonzero=nonzero), {"work": action}
            if kg.section in ("first", "second"):
                chosen = (kg.section == "second") == bool(kg.choice)
                action = self.append_chosen[symbol] if chosen else IDENTITY
                return replace(kg, digits=True, dirty=kg.dirty or chosen), {"work": action}
        elif symbol == COMMA:
            if kg.section == "first" and kg.digits:
                return replace(kg, section="second", digits=False), {}
        elif symbol in (UNIVERSAL, EXISTENTIAL):
            if kg.digits and kg.section in ("S", "second"):
                actions = {"work": self._flush(kg), "restart": self.halve}
                if symbol == UNIVERSAL:
                    actions["coin"] = self.prepare
                task = "coin" if symbol == UNIVERSAL else "bit"
                return KGState(section="first", kind=symbol, task=task), actions
        elif symbol == END:
            # no pairs: the game is won iff S = 0, decided without the register
            if kg.section == "S" and kg.nonzero:
                return replace(kg, verdict=Outcome.REJECT), {}
            if kg.digits and kg.section in ("S", "second"):
                return KGState(section="end", task="work"), {"work": self._flush(kg)}
        return replace(kg, verdict=Outcome.REJECT), {}

    def task_actions(self, kg: KGState) -> dict:
        if kg.task == "coin":
            return {"coin": WEIGHT}
        if kg.task == "work":
            return {"work": WEIGHT, "restart": self.scale}
        if kg.task == "restart":
            return {"restart": WEIGHT}
        raise MachineError(f"no tape action for knapsack task {kg.task!r}")

    def resolve(self, kg: KGState, taus: dict[str, int]) -> KGState:
        """Next state after the weighting of an internal task."""
        if kg.task == "coin":
            return replace(kg, task=None, choice=taus["coin"] - 1)
        if kg.task == "work":
            if taus["work"] == 1:
                return replace(kg, task="restart")
            return replace(kg, task=None, verdict=Outcome.REJECT)
        if kg.task == "restart":
            verdict = Outcome.ACCEPT if taus["restart"] == 1 else Outcome.RESTART
            return replace(kg, task=None, verdict=verdict)
        raise MachineError(f"nothing to resolve for knapsack task {kg.task!r}")

    def answer(self, kg: KGState, reply: str) -> KGState:
        if reply in self.choice_symbols:
            return replace(kg, task=None, choice=self.choice_symbols.index(reply))
        return replace(kg, task=None, verdict=Outcome.REJECT)

    def _flush(self, kg: KGState) -> str | AffineOperator:
        return self.subtract if kg.dirty else IDENTITY


BEGIN = "begin"


class KnapsackController:
    """Reads the instance from the input tape, left to right."""

    initial = BEGIN

    def __init__(self, logic: KnapsackLogic):
        self.logic = logic

    def outcome(self, state: State) -> Optional[Outcome]:
        return None if state == BEGIN else state.verdict

    def query(self, state: State) -> Optional[str]:
        if state != BEGIN and state.task == "bit":
            return ASK_BIT
        return None

    def on_reply(self, state: State, reply: str) -> State:
        return self.logic.answer(state, reply)

    def actions(self, state: State, symbol: str) -> tuple:
        if state == BEGIN:
            found: dict = {}
        elif state.task is not None:
            found = self.logic.task_actions(state)
        else:
            found = self.logic.feed(state, self._symbol(symbol))[1]
        return tuple(found.get(role, IDENTITY) for role in KnapsackLogic.ROLES)

    def transition(self, state: State, symbol: str, taus: tuple[int, ...]) -> tuple[State, int]:
        if state == BEGIN:
            if symbol == LEFT_MARKER:
                return KGState(), 1
            return KGState(verdict=Outcome.REJECT), 0
        if state.task is not None:
            return self.logic.resolve(state, dict(zip(KnapsackLogic.ROLES, taus))), 0
        successor = self.logic.feed(state, self._symbol(symbol))[0]
        return successor, 0 if symbol == RIGHT_MARKER else 1

    def label(self, state: State) -> str:
        if state == BEGIN:
            return BEGIN
        parts = [state.section, state.kind or "", f"choice={state.choice}"]
        if state.task:
            parts.append(f"task={state.task}")
        if state.verdict:
            parts.append(state.verdict.value)
        return " ".join(p for p in parts if p)

    @staticmethod
    def _symbol(symbol: str) -> str:
        if symbol == RIGHT_MARKER:
            return END
        # a second left marker can only be garbage
        return "?" if symbol == LEFT_MARKER else symbol


def build_kg(epsilon: RationalInput = Fraction(1, 3)) -> ProtocolBundle:
    """
    Verifier for the knapsack game.

    Raises:
        EpsilonRangeError: If epsilon is not in (0, 1/2)
    """
    logic = KnapsackLogic(epsilon)
    verifier = compile_controller(
        name="kg",
        mode=Mode.TWO_WAY,
        alphabet=KG_ALPHABET,
        comm_alphabet=logic.choice_symbols,
        registers=logic.registers(),
        controller=KnapsackController(logic),
    )
    logger.debug("knapsack verifier with delta=%s", logic.delta)
    return ProtocolBundle(
        name="kg",
        verifier=verifier,
        honest=lambda word: KnapsackProver(word, coin_register=1),
        oracle=kg_member,
        epsilon=logic.epsilon,
        alphabet=KG_ALPHABET,
        round_structured=True,
        horizon_for=lambda word: 2 * len(word) + 16,
        parameters={"delta": logic.delta, "restart_ratio": HALF},
    )
