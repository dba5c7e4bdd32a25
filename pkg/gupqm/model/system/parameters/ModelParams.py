import math

from dataclasses import dataclass, replace
from gupqm.model.errors import ParameterError

__INVALID_PARAMETER_ERROR = "Invalid model parameter %s = %s: %s"


@dataclass(frozen=True)
class ModelParams:
    """
    Define the physical parameters shared by every computation.

    m: float
        Mass of the particle, positive
    hbar: float
        Action quantum, positive
    omega: float
        Angular frequency of the oscillator. Zero selects the free particle
    alpha: float
        GUP parameter, with dimension (momentum)^-2. Small values are the
        caller's concern: results are truncated at first order
    D: int
        Spatial dimension
    """

    m: float = 1.0
    hbar: float = 1.0
    omega: float = 0.0
    alpha: float = 0.0
    D: int = 1

    def __post_init__(self):
        for name in ('m', 'hbar', 'omega', 'alpha'):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterError(_message(name, value, 'not finite'))
        if self.m <= 0:
            raise ParameterError(_message('m', self.m, 'must be positive'))
        if self.hbar <= 0:
            raise ParameterError(_message('hbar', self.hbar, 'must be positive'))
        if self.omega < 0:
            raise ParameterError(_message('omega', self.omega, 'negative'))
        if self.alpha < 0:
            raise ParameterError(_message('alpha', self.alpha, 'negative'))
        if not math.isfinite(self.D) or int(self.D) != self.D or self.D < 1:
            raise ParameterError(_message('D', self.D, 'must be an integer >= 1'))

    @property
    def free(self) -> bool:
        """True if the parameters describe a free particle (omega = 0)."""
        return self.omega == 0

    def length_scale(self, time: complex) -> float:
        """
        Characteristic length of the system: sqrt(hbar / m omega) for the
        oscillator, sqrt(hbar |T| / m) for the free particle.

        Parameters
        ----------
        time: complex
            The (possibly complex) time of the evolution
        Returns
        -------
        A positive length used to scale finite-difference steps.
        """

        if self.free:
            return math.sqrt(self.hbar * abs(time) / self.m)
        return math.sqrt(self.hbar / (self.m * self.omega))

    def replace(self, **changes) -> 'ModelParams':
        """Returns a copy of the parameters with the given fields changed."""
        return replace(self, **changes)


def _message(name, value, reason) -> str:
    return __INVALID_PARAMETER_ERROR % (name, value, reason)


default = ModelParams()
