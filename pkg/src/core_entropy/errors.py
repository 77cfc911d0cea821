"""Exception hierarchy shared by the library and the command line."""


class CoreEntropyError(Exception):
    """Base class for all library errors."""


class AngleSyntaxError(CoreEntropyError, ValueError):
    """Malformed angle literal or bit word."""


class DomainError(CoreEntropyError, ValueError):
    """Input is well formed but outside the domain of the operation."""


class ConvergenceError(CoreEntropyError, ArithmeticError):
    """An iterative method ran out of budget without certifying its result.

    ``bracket`` holds the best (lo, hi) interval known when giving up, if any.
    """

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket
