import math
import numpy as np
import scipy.integrate

from gupqm.model.errors import DomainError

# crossovers between the three representations
SERIES_LIMIT = 2.0
ASYMPTOTIC_LIMIT = 20.0
# trapezoidal step on the integral representation
STEP = 0.1
# the integrand is cut where exp(-z (cosh t - 1)) drops below exp(-DECAY)
DECAY = 40.0

__ORDER_ERROR = "Only the orders 0 and 1 are available, found %s"
__ARGUMENT_ERROR = "Modified Bessel functions K require z > 0, found %s"


def _series(nu: int, z: float) -> float:
    # ascending series with the logarithmic term, psi(k + 1) = -gamma + H_k
    y = z * z / 4
    log = math.log(z / 2)

    term = 1.0 if nu == 0 else z / 2
    psi0 = -np.euler_gamma
    psi1 = psi0 + (1 if nu else 0)
    bessel_i, tail, k = 0.0, 0.0, 0
    while True:
        bessel_i += term
        tail += (psi0 + psi1) * term
        k += 1
        next_term = term * y / (k * (k + nu))
        if next_term < 1e-18 * abs(bessel_i):
            break
        term = next_term
        psi0 += 1 / k
        psi1 += 1 / (k + nu)

    if nu == 0:
        return -log * bessel_i + tail / 2
    return 1 / z + log * bessel_i - tail / 2


def _trapezoid(nu: int, z: float) -> float:
    # K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt, even in t and
    # decaying doubly exponentially, so the trapezoidal rule converges
    # geometrically in 1 / STEP
    end = math.acosh(1 + DECAY / z)
    t = np.linspace(0, end, int(math.ceil(end / STEP)) + 1)
    values = np.exp(-z * (np.cosh(t) - 1)) * np.cosh(nu * t)
    return math.exp(-z) * float(scipy.integrate.trapezoid(values, t))


def _asymptotic(nu: int, z: float) -> float:
    # Hankel expansion, summed while the terms keep decreasing
    mu = 4 * nu * nu
    total, term, k = 1.0, 1.0, 0
    while True:
        k += 1
        next_term = term * (mu - (2 * k - 1) ** 2) / (k * 8 * z)
        if abs(next_term) >= abs(term) or next_term == 0:
            break
        term = next_term
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return math.sqrt(math.pi / (2 * z)) * math.exp(-z) * total


def bessel_k(nu: int, z: float) -> float:
    """
    Modified Bessel function of the second kind K_nu(z), nu in {0, 1}.
    The ascending series is used for z <= 2, the trapezoidal rule on the
    integral representation for 2 < z < 20 and the Hankel asymptotic
    expansion beyond.

    Parameters
    ----------
    nu: int
        Order, 0 or 1
    z: float
        Positive argument
    Returns
    -------
    The value of K_nu(z), to about 1e-12 relative.
    """

    if nu not in (0, 1):
        raise DomainError(__ORDER_ERROR % nu)
    if not z > 0:
        raise DomainError(__ARGUMENT_ERROR % z)

    z = float(z)
    if z <= SERIES_LIMIT:
        return _series(nu, z)
    if z < ASYMPTOTIC_LIMIT:
        return _trapezoid(nu, z)
    return _asymptotic(nu, z)
