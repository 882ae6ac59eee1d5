"""Exception types shared by the toricschemes modules.

Every error carries a short machine-readable ``code``; the command-line
front end maps these onto exit statuses.
"""


class ToricError(Exception):
    """Base class for all errors raised by this package."""

    code = "TORIC_ERROR"

    def __init__(self, detail=""):
        super().__init__(detail)
        self.detail = detail


class InputError(ToricError, ValueError):
    """Malformed input: wrong lengths, bad JSON, unknown degrees."""

    code = "INVALID_INPUT"


class PreconditionError(ToricError):
    """A mathematical precondition of an operation does not hold."""

    code = "PRECONDITION"


class NotSharpError(PreconditionError):
    code = "NOT_SHARP"


class InvalidFanError(PreconditionError):
    code = "INVALID_FAN"


class NotAFaceError(PreconditionError):
    code = "NOT_A_FACE"


class NotBigError(PreconditionError):
    code = "NOT_BIG"


class NotFullError(PreconditionError):
    code = "NOT_FULL"


class EmptyFanError(PreconditionError):
    code = "EMPTY_FAN"


class BoxUnstableError(PreconditionError):
    code = "BOX_UNSTABLE"


class NotCompleteWarning(UserWarning):
    """Issued when a finiteness claim is probed on a non-complete fan."""
