"""Exception types shared across the package."""


class FdmimoError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(FdmimoError, ValueError):
    """Matrix/vector dimensions are inconsistent with the requested operation."""


class SingularMatrixError(FdmimoError, ArithmeticError):
    """A pivot fell below tolerance while inverting a matrix."""


class ParameterError(FdmimoError, ValueError):
    """A scenario or sweep parameter violates its documented constraints."""


class ConfigError(FdmimoError, ValueError):
    """A config file or command line could not be parsed into a valid run."""


class RedrawBudgetError(FdmimoError, RuntimeError):
    """Too many Monte Carlo trials had to be redrawn (singular channels)."""
