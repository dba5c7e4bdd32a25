import math
import numpy as np
import scipy.integrate
import scipy.optimize

from dataclasses import dataclass
from gupqm.model.errors import ConvergenceError, DimensionError, DomainError
from gupqm.model.green.bessel import bessel_k
from gupqm.model.kernels.propagator import FreeParticle, propagator
from gupqm.model.system.endpoints import Endpoints, TimeArg
from gupqm.model.system.parameters.ModelParams import ModelParams
from typing import Sequence, Tuple

# relative accuracy requested to the Laplace quadrature
QUADRATURE_TOLERANCE = 1e-10
# estimated errors above this relative size are reported as failures
ERROR_LIMIT = 1e-8
# exp(-UNDERFLOW) is below the smallest normal double
UNDERFLOW = 745.0
TAIL = 800.0

__EPSILON_ERROR = "The energy parameter must be positive, found %s"
__COINCIDENT_ERROR = "Coincident endpoints: the Green's function diverges"
__DIMENSION_ERROR = "The closed form is two-dimensional, found D = %d"
__OSCILLATOR_ERROR = "The Laplace transform is restricted to the free particle"
__QUADRATURE_ERROR = "Laplace quadrature did not converge: %s +- %s"


@dataclass(frozen=True)
class GreenQuery:
    """
    Arguments of the energy-dependent Green's function.

    epsilon: float
        Positive energy parameter of the Laplace transform
    q0, qf: Tuple[float, ...]
        Initial and final points
    params: ModelParams
        Physical parameters
    """

    epsilon: float
    q0: Tuple[float, ...]
    qf: Tuple[float, ...]
    params: ModelParams

    def __post_init__(self):
        if not self.epsilon > 0:
            raise DomainError(_epsilon_message(self.epsilon))
        e = Endpoints(self.q0, self.qf)
        e.require(self.params.D)
        object.__setattr__(self, 'q0', e.q0)
        object.__setattr__(self, 'qf', e.qf)

    @property
    def separation(self) -> float:
        return float(np.linalg.norm(np.subtract(self.qf, self.q0)))

    @property
    def z(self) -> float:
        """Bessel argument sqrt(2 m epsilon / hbar) |qf - q0|."""
        p = self.params
        return math.sqrt(2 * p.m * self.epsilon / p.hbar) * self.separation


def green_free_2d_closed(g: GreenQuery) -> float:
    """
    First-order Green's function of the two-dimensional free particle,
        (m / pi hbar) [(1 + 8 alpha hbar m eps) K0(z) - 2 alpha hbar m eps z K1(z)]
    the Laplace transform (measure exp(-eps tau)) of the Euclidean kernel.
    """

    p = g.params
    if p.D != 2:
        raise DimensionError(__DIMENSION_ERROR % p.D)
    if g.separation == 0:
        raise DomainError(__COINCIDENT_ERROR)

    z = g.z
    shift = p.alpha * p.hbar * p.m * g.epsilon
    return p.m / (math.pi * p.hbar) * (
        (1 + 8 * shift) * bessel_k(0, z) - 2 * shift * z * bessel_k(1, z)
    )


def euclidean_propagator(
        params: ModelParams,
        q0: Sequence[float],
        qf: Sequence[float],
        tau: float,
        linearized: bool = True
) -> float:
    """
    The kernel at imaginary time T = -i tau, real for real endpoints. The
    first-order expansion in alpha is returned unless linearized is False.
    """

    e = Endpoints(q0, qf, TimeArg.imaginary(tau))
    e.require(params.D)
    value = propagator(params).amplitude(
        np.asarray(e.qf), np.asarray(e.q0), e.T, linearized
    )
    return float(np.real(value))


def laplace_numeric(
        params: ModelParams,
        q0: Sequence[float],
        qf: Sequence[float],
        epsilon: float,
        linearized: bool = True
) -> float:
    """
    Numerical Laplace transform int_0^inf exp(-eps tau) G(tau) dtau of the
    Euclidean free kernel. The quadrature runs in u = log(tau), which tames
    both the essential singularity at tau = 0 and the exponential tail, and
    is split at the maximum of the integrand.

    Parameters
    ----------
    params: ModelParams
        Physical parameters of a free particle, any D
    q0, qf: Sequence[float]
        Distinct initial and final points
    epsilon: float
        Positive energy parameter
    linearized: bool
        Transform the first-order expansion of the kernel (default) or the
        kernel with the exponentiated action
    Returns
    -------
    The value of the transform.
    """

    g = GreenQuery(epsilon, tuple(q0), tuple(qf), params)
    if not params.free:
        raise DomainError(__OSCILLATOR_ERROR)
    if g.separation == 0:
        raise DomainError(__COINCIDENT_ERROR)

    prop = FreeParticle(params)
    x, y = np.asarray(g.qf), np.asarray(g.q0)

    def integrand(u: float, kernel: FreeParticle, expand: bool) -> float:
        tau = math.exp(u)
        value = kernel.amplitude(x, y, -1j * tau, expand)
        return math.exp(u - epsilon * tau) * float(np.real(value))

    # exp(-A / tau) of the kernel underflows below lower, exp(-eps tau) above
    barrier = params.m * g.separation ** 2 / (2 * params.hbar)
    lower = math.log(barrier / UNDERFLOW)
    upper = math.log(TAIL / epsilon)
    if upper <= lower:
        # exp(-A / tau - eps tau) underflows for every tau
        return 0.0

    # the alpha = 0 integrand is positive and shares the peak position
    reference = FreeParticle(params.replace(alpha=0.0))
    peak = scipy.optimize.minimize_scalar(
        lambda u: -math.log(max(integrand(u, reference, True), 1e-300)),
        bounds=(lower, upper), method='bounded'
    ).x

    total = 0.0
    for a, b in ((lower, peak), (peak, upper)):
        value, error = scipy.integrate.quad(
            integrand, a, b, args=(prop, linearized),
            epsabs=0, epsrel=QUADRATURE_TOLERANCE, limit=200
        )
        if not math.isfinite(value) or error > ERROR_LIMIT * abs(value):
            raise ConvergenceError(_quadrature_message(value, error))
        total += value
    return total


def _epsilon_message(epsilon) -> str:
    return __EPSILON_ERROR % epsilon


def _quadrature_message(value, error) -> str:
    return __QUADRATURE_ERROR % (value, error)
