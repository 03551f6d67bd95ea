"""Exception types raised by the numerical routines."""


class RangeError(ValueError):
    """Order or argument outside the supported evaluation range."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class DivergenceError(ValueError):
    """A bound was requested below its convergence threshold."""
