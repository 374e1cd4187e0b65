"""Exception hierarchy for gl2frame.

Input problems map to CLI exit code 2, failed guaranteed identities to exit
code 3. Everything raised by the library derives from ``Gl2FrameError``.
"""

from __future__ import annotations


class Gl2FrameError(Exception):
    """Base class for all gl2frame errors."""


# ── Input errors (exit code 2) ──


class InputError(Gl2FrameError):
    """The problem as given cannot be analyzed."""


class ExpressionSyntaxError(InputError, ValueError):
    """The right-hand side does not parse.

    Attributes:
        position: 0-based character offset of the offending token
    """

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.reason = message
        self.position = position


class ExpansionDomainError(InputError, ValueError):
    """An expression cannot be expanded exactly at the requested point."""


class ProblemFileError(InputError, ValueError):
    """A problem file or problem specification is malformed."""


class InsufficientOrderError(InputError):
    """A jet was asked for more than its validity order supports."""


class JetSpaceMismatchError(Gl2FrameError, ValueError):
    """Operands live in different jet spaces (variable-count mismatch)."""


# ── Degeneracy ──


class NotInvertibleError(Gl2FrameError, ZeroDivisionError):
    """A jet has no exact inverse at the expansion point."""


class DegenerateFrameError(InputError):
    """A family of vector fields is not a basis at the expansion point."""


# ── Internal consistency (exit code 3) ──


class InternalConsistencyError(Gl2FrameError):
    """An identity guaranteed by the theory failed.

    Attributes:
        identity: name of the identity that failed, e.g. ``"T01_2"`` or ``"[BF0,BV2]=-2BV2"``
    """

    def __init__(self, message: str, identity: str = "") -> None:
        super().__init__(message)
        self.identity = identity
