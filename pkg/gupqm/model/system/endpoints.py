import numpy as np

from dataclasses import dataclass, field
from gupqm.model.errors import DimensionError, DomainError
from typing import Sequence, Tuple, Union

Vector = Tuple[float, ...]

__ZERO_TIME_ERROR = "The time argument must be different from zero"
__EUCLIDEAN_TIME_ERROR = "Euclidean time must be a real positive tau, found %s"
__NOT_FINITE_ERROR = "Endpoint components must be finite, found %s"
__DIMENSION_ERROR = "Inconsistent dimensions: q0 has %d components, qf has %d"
__PARAMS_DIMENSION_ERROR = "Endpoints have dimension %d, parameters require %d"


@dataclass(frozen=True)
class TimeArg:
    """
    Time argument of a propagator.

    value: complex
        Real time T or, for the Euclidean kind, the positive tau
    euclidean: bool
        True if value is an imaginary time tau, that is T = -i tau
    """

    value: complex
    euclidean: bool = False

    def __post_init__(self):
        _check_time(self.value, self.euclidean)

    @staticmethod
    def real(time: complex) -> 'TimeArg':
        return TimeArg(complex(time), False)

    @staticmethod
    def imaginary(tau: float) -> 'TimeArg':
        return TimeArg(tau, True)

    @property
    def T(self) -> complex:
        """The complex time entering every closed formula."""
        if self.euclidean:
            return -1j * float(np.real(self.value))
        return complex(self.value)

    def scaled(self, factor: float) -> 'TimeArg':
        """Returns the same kind of time with its value multiplied by factor."""
        return TimeArg(self.value * factor, self.euclidean)


@dataclass(frozen=True)
class Endpoints:
    """
    Boundary data of a propagator: initial point, final point and time.
    """

    q0: Vector
    qf: Vector
    time: TimeArg = field(default_factory=lambda: TimeArg.real(1.0))

    def __post_init__(self):
        # normalize any sequence (lists, numpy arrays) to a tuple of floats
        object.__setattr__(self, 'q0', _as_vector(self.q0))
        object.__setattr__(self, 'qf', _as_vector(self.qf))
        _check_dimensions(len(self.q0), len(self.qf))

    @property
    def D(self) -> int:
        return len(self.q0)

    @property
    def T(self) -> complex:
        return self.time.T

    def swapped(self) -> 'Endpoints':
        """Returns the endpoints with q0 and qf exchanged."""
        return Endpoints(self.qf, self.q0, self.time)

    def shifted(self, vector: Sequence[float]) -> 'Endpoints':
        """Returns the endpoints with both points translated by vector."""
        v = _as_vector(vector)
        _check_dimensions(self.D, len(v))
        return Endpoints(
            tuple(a + b for a, b in zip(self.q0, v)),
            tuple(a + b for a, b in zip(self.qf, v)),
            self.time
        )

    def with_time(self, time: TimeArg) -> 'Endpoints':
        return Endpoints(self.q0, self.qf, time)

    def require(self, D: int):
        """Raise a DimensionError if the endpoints are not D-dimensional."""
        if self.D != D:
            raise DimensionError(_params_dimension_message(self.D, D))


def displacement(e: Endpoints) -> Tuple[np.ndarray, float]:
    """
    Returns the displacement qf - q0 and its squared Euclidean norm.

    Parameters
    ----------
    e: Endpoints
        The boundary data
    Returns
    -------
    The pair (vector, squared norm).
    """

    _check_dimensions(len(e.q0), len(e.qf))
    delta = np.asarray(e.qf, dtype=float) - np.asarray(e.q0, dtype=float)
    return delta, float(delta @ delta)


def principal_power(
        z: Union[complex, np.ndarray],
        p: float
) -> Union[complex, np.ndarray]:
    """
    Complex power z^p on the principal branch, with the argument of z taken in
    (-pi, pi]. Negative reals approached from below (signed zero imaginary
    part) are mapped onto the +pi side.

    Parameters
    ----------
    z: complex or np.ndarray
        The base
    p: float
        The real exponent
    Returns
    -------
    The principal value of z^p.
    """

    z = np.asarray(z, dtype=complex)
    modulus = np.abs(z)
    argument = np.angle(z)
    argument = np.where(argument <= -np.pi, np.pi, argument)
    result = np.power(modulus, p) * np.exp(1j * p * argument)
    return complex(result) if result.ndim == 0 else result


def _as_vector(values) -> Vector:
    vector = tuple(float(v) for v in np.atleast_1d(np.asarray(values, float)))
    if not all(np.isfinite(vector)):
        raise DomainError(__NOT_FINITE_ERROR % (vector,))
    return vector


def _check_dimensions(d0: int, df: int):
    if d0 != df:
        raise DimensionError(__DIMENSION_ERROR % (d0, df))


def _params_dimension_message(found: int, required: int) -> str:
    return __PARAMS_DIMENSION_ERROR % (found, required)


def _check_time(value, euclidean: bool):
    if value == 0:
        raise DomainError(__ZERO_TIME_ERROR)
    if euclidean and (np.imag(value) != 0 or np.real(value) <= 0):
        raise DomainError(__EUCLIDEAN_TIME_ERROR % value)
