"""Exception hierarchy shared by all modules.

The CLI maps :class:`InputError` subclasses to exit code 2 and
:class:`HypothesisError` subclasses to exit code 3.
"""


class ReesAGError(Exception):
    """Base class for every error raised by this package."""


class InputError(ReesAGError):
    """Malformed user input (syntax, unknown names, wrong shapes)."""


class ParseError(InputError):
    def __init__(self, message: str, text: str = "", position: int = -1):
        self.text = text
        self.position = position
        if position >= 0:
            message = f"{message} at position {position}"
        super().__init__(message)


class RingMismatchError(InputError):
    pass


class HypothesisError(ReesAGError):
    """A mathematical precondition of an operation does not hold."""


class NotPrimaryError(HypothesisError):
    pass


class ShapeError(HypothesisError):
    pass


class InternalInconsistency(ReesAGError):
    """Two independent computations disagree; indicates a bug."""
