"""Exception types shared across the library."""


class KeplevinError(Exception):
    """Base class for all library errors."""


class ConfigurationError(KeplevinError):
    """Invalid run configuration, e.g. working precision below the floor."""


class DomainError(KeplevinError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class RangeError(KeplevinError, IndexError):
    """Requested index beyond what a table holds."""


class DegenerateTermError(KeplevinError, ZeroDivisionError):
    """A remainder estimate omega_j is exactly zero.

    Carries the summation index j so callers can identify the offending term.
    """

    def __init__(self, j, message=None):
        self.j = j
        super().__init__(message or "remainder estimate omega_%d is zero" % j)


class ConvergenceError(KeplevinError):
    """An iteration failed to converge; carries the iterate trace if any."""

    def __init__(self, message, trace=None):
        self.trace = list(trace) if trace is not None else []
        super().__init__(message)


class FitError(KeplevinError):
    """Too few usable points to fit a convergence-rate model."""
