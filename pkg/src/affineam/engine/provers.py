"""
General-purpose provers.
"""

from typing import Callable, Hashable, Optional, Sequence

from affineam.engine.models import Prover
from affineam.machine import Transcript


class ConstantProver(Prover):
    """Always gives the same reply."""

    def __init__(self, symbol: str):
        self.symbol = symbol

    def reply(self, transcript: Transcript) -> str:
        return self.symbol

    def view(self, transcript: Transcript) -> Hashable:
        return ()


class ScriptedProver(Prover):
    """
    Replies from a fixed script, indexed by replies given in the current round.

    Once the script runs out it keeps sending ``fallback``.
    """

    def __init__(self, script: Sequence[str], fallback: str):
        self.script = tuple(script)
        self.fallback = fallback

    def reply(self, transcript: Transcript) -> str:
        index = transcript.replies
        return self.script[index] if index < len(self.script) else self.fallback

    def view(self, transcript: Transcript) -> Hashable:
        return min(transcript.replies, len(self.script))


class FunctionProver(Prover):
    """
    Adapter for a plain function of the transcript.

    Args:
        fn: Reply function
        view: Optional view function; by default nothing is merged
    """

    def __init__(
        self,
        fn: Callable[[Transcript], str],
        view: Optional[Callable[[Transcript], Hashable]] = None,
    ):
        self._fn = fn
        self._view = view

    def reply(self, transcript: Transcript) -> str:
        return self._fn(transcript)

    def view(self, transcript: Transcript) -> Hashable:
        return self._view(transcript) if self._view is not None else transcript


class TableProver(Prover):
    """Plays a strategy table recorded by worst-case search."""

    def __init__(self, table: dict, fallback: str):
        self.table = table
        self.fallback = fallback

    def reply(self, transcript: Transcript) -> str:
        return self.table.get(transcript.key(), self.fallback)


class AnyMoves:
    """Unrestricted prover moves, as a ProverMoves."""

    def __init__(self, alphabet: Sequence[str]):
        self.alphabet = tuple(alphabet)

    def moves(self, transcript: Transcript) -> Sequence[str]:
        return self.alphabet

    def view(self, transcript: Transcript) -> Hashable:
        return None
