"""
    This module contains the list of all custom exceptions for the counter-erasure toolkit.
"""


class CounterErasureException(Exception):
    """
    Generic exception to be raised for any high level computation failures.
    """


class MissingConfigException(CounterErasureException):
    """
    Exception to be raised when some config is missing or empty.
    """


class DomainValidationException(CounterErasureException):
    """
    Exception to be raised when a parameter lies outside its documented domain.
    The message always names the violated bound.
    """


class InvalidStateException(CounterErasureException):
    """
    Exception to be raised when a vector or operator fails the norm, Hermiticity,
    positivity or trace checks of a quantum state.
    """


class DimensionMismatchException(CounterErasureException):
    """
    Exception to be raised when operand dimensions do not agree.
    """


class InconsistentDecompositionException(CounterErasureException):
    """
    Exception to be raised when a counter-state radicand is negative beyond rounding noise.
    """


class UndefinedConditionalStateException(CounterErasureException):
    """
    Exception to be raised when a measurement branch has (numerically) zero probability,
    so its conditional state does not exist.
    """


class DegenerateSuperpositionException(CounterErasureException):
    """
    Exception to be raised when a superposition of slit waves vanishes and cannot be normalized.
    """


class MissingHistogramException(CounterErasureException):
    """
    Exception to be raised when a simulation report carries no screen histograms.
    """


class BinMismatchException(CounterErasureException):
    """
    Exception to be raised when histogram bins and analytic densities live on different grids.
    """


class VerificationFailedException(CounterErasureException):
    """
    Exception to be raised when at least one invariant suite of `verify` fails.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
