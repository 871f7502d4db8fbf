"""
Errors
Exception hierarchy shared by every unipred module
"""

from typing import Optional


class UnipredError(Exception):
    """Base class for all unipred failures."""


class HypothesisError(UnipredError, ValueError):
    """A hypothesis spec or pool is malformed."""


class ComaError(UnipredError):
    """A predictor is undefined where a number is required.

    Raised when a predictor (or a pool member with positive weight) has
    gone into a coma: its measure gave the history probability zero.
    """

    def __init__(self, history: str, member: Optional[int] = None):
        self.history = history
        self.member = member
        where = f"'{history}'" if history else 'the empty history'
        if member is None:
            super().__init__(f"Predictor undefined at {where}")
        else:
            super().__init__(f"Member {member + 1} undefined at {where}")


class ZeroEvidenceError(UnipredError):
    """All pool members assign zero probability to the observed bit."""

    def __init__(self, history: str):
        self.history = history
        super().__init__(f"All members assign zero probability after '{history}'")


class HorizonError(UnipredError, ValueError):
    """A horizon-limited predictor was queried beyond its horizon."""


class SequenceFormatError(UnipredError, ValueError):
    """A sequence file contains something other than 0, 1 and whitespace."""

    def __init__(self, offset: int, char: str):
        self.offset = offset
        self.char = char
        super().__init__(f"Illegal character {char!r} at byte offset {offset}")


class ExperimentError(UnipredError):
    """An experiment failed; carries the config digest."""

    def __init__(self, digest: str, cause: Exception):
        self.digest = digest
        self.cause = cause
        super().__init__(f"Experiment {digest[:12]} failed: {cause}")
