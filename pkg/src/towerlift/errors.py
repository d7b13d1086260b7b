"""Exception hierarchy.

Precondition failures map to CLI exit status 2 and search budget exhaustion to
exit status 3, so callers can tell "the input is out of contract" apart from
"the search gave up".
"""


class TowerliftError(Exception):
    """Base class for all package errors."""


class DomainError(TowerliftError, ValueError):
    """Operands come from different rings, towers or coefficient fields."""


class ParseError(TowerliftError, ValueError):
    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at offset {position} in {text!r})"
        super().__init__(message)


class InvalidTower(TowerliftError, ValueError):
    pass


class NotAUnit(TowerliftError, ArithmeticError):
    pass


class InvalidSubstitution(TowerliftError, ValueError):
    pass


class BoundaryUndefined(TowerliftError, ValueError):
    """Evaluation at t = 1 needs f(1) to be a unit of the base ring."""


class PreconditionError(TowerliftError, ValueError):
    """An operation was called outside its contract."""

    reason = "precondition"


class ImproperIdeal(PreconditionError):
    reason = "improper-ideal"


class HeightTooSmall(PreconditionError):
    reason = "height"


class RankTooSmall(PreconditionError):
    reason = "rank"


class NotInIdeal(PreconditionError):
    reason = "not-in-ideal"


class LevelMismatch(PreconditionError):
    reason = "level-mismatch"


class IncompatibleBoundary(PreconditionError):
    reason = "incompatible-boundary"


class NotEulerDatum(PreconditionError):
    reason = "not-an-euler-class-datum"


class NotInModule(PreconditionError):
    reason = "not-in-module"


class Unsupported(PreconditionError):
    reason = "unsupported"


class NotComaximal(PreconditionError):
    reason = "not-comaximal"


class LocalizationMismatch(PreconditionError):
    reason = "localization-mismatch"


class BudgetExceeded(TowerliftError, RuntimeError):
    """A bounded search ran out of budget; `last` records where it stopped."""

    def __init__(self, message, stage=None, last=None):
        self.stage = stage
        self.last = last
        super().__init__(message)
