"""Exception hierarchy shared by every module of the package."""


class ResonanceError(Exception):
    """Base class for all package errors."""


class DomainError(ResonanceError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class QuadratureError(ResonanceError, ArithmeticError):
    """A numerical integral did not converge within its budget.

    Attributes
    ----------
    value : float
        Best partial value reached before giving up.
    error_estimate : float
        Achieved error estimate for ``value``.
    context : str
        Human-readable name of the failing integral.
    """

    def __init__(self, message, value=float("nan"), error_estimate=float("inf"), context=""):
        super().__init__(message if not context else f"{context}: {message}")
        self.value = value
        self.error_estimate = error_estimate
        self.context = context


class OracleError(ResonanceError, ArithmeticError):
    """A regulated oracle failed to extrapolate cleanly to the unregulated limit."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = list(report or [])
