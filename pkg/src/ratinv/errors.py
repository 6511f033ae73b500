"""Exception hierarchy.

The CLI maps these onto exit codes: parse/usage errors exit 1,
mathematical rejections exit 2, internal-consistency failures exit 3.
"""


class RatinvError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ContextError(RatinvError):
    """Operands live in different variable contexts."""


class ParseError(RatinvError):
    """Malformed problem file or expression."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        self.bare_message = message
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)


class UsageError(RatinvError):
    """A command was invoked without the data it needs."""


class MathematicalRejection(RatinvError):
    """Input is well formed but mathematically unsuitable."""

    exit_code = 2


class ActionError(MathematicalRejection):
    """A group action violates an axiom."""


class NotACrossSection(MathematicalRejection):
    """A candidate ideal fails the cross-section conditions."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ExcludedLocusError(MathematicalRejection):
    """Specialization point where a stored denominator vanishes."""


class NotZeroDimensional(MathematicalRejection):
    """An operation required a zero-dimensional ideal."""


class NotExpressible(MathematicalRejection):
    """A target could not be rewritten in terms of the invariants."""


class BudgetExhausted(MathematicalRejection):
    """Random search ran out of attempts."""

    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = list(failures)


class InternalConsistencyError(RatinvError):
    """A self-check failed; indicates a bug in the engine."""

    exit_code = 3
