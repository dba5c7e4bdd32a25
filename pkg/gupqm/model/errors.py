"""
Errors raised by the library. All of them are `ValueError`s, so that callers
not interested in the distinction can catch the standard exception.
"""


class GUPError(ValueError):
    """Base class of the library errors."""


class ParameterError(GUPError):
    """Physical parameters violating their invariants."""


class DimensionError(GUPError):
    """Vectors whose dimension disagrees with the computation."""


class CausticError(GUPError):
    """
    The oscillator closed forms diverge where sin(omega T) vanishes.

    Fields
    ------
    omega_t: complex
        The offending value of omega * T
    """

    def __init__(self, message: str, omega_t: complex):
        super().__init__(message)
        self.omega_t = omega_t


class DegreeOverflowError(GUPError):
    """Polynomial degree above the supported bound."""


class DomainError(GUPError):
    """Arguments outside the domain of an operation."""


class ConvergenceError(GUPError):
    """Numerical procedure that did not reach the requested accuracy."""
