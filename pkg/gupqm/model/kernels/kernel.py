import cmath
import numpy as np

from dataclasses import dataclass, field
from gupqm.logger import logger
from gupqm.model.classical.action import CAUSTIC_THRESHOLD, invariants
from gupqm.model.kernels.propagator import FreeParticle, Oscillator
from gupqm.model.kernels.propagator import PrefactorSpec, Propagator
from gupqm.model.moments.gaussian import GaussianWeight
from gupqm.model.moments.gaussian import expectation
from gupqm.model.moments.polynomial import MultiPoly
from gupqm.model.system.endpoints import Endpoints
from gupqm.model.system.parameters.ModelParams import ModelParams
from typing import Optional

# below this |omega T| the oscillator is cross-checked against the free form
CROSSOVER = 1e-6
# relative disagreement tolerated at the crossover
CROSSOVER_TOLERANCE = 1e-6
# rounding admitted by the decomposition check
DECOMPOSITION_TOLERANCE = 1e-12

__DECOMPOSITION_ERROR = "Kernel amplitude differs from its decomposition"
__CROSSOVER_WARNING = (
    "Oscillator and free kernels disagree at omega T = %s (relative %.3g)"
)


@dataclass(frozen=True)
class KernelValue:
    """
    Value of a first-order propagator, together with its decomposition
        amplitude = leading_prefactor (1 + alpha f) exp(i/hbar (S0 + alpha S1))
    """

    amplitude: complex
    leading_prefactor: complex
    f_alpha: complex = field(metadata={'json': 'f'})
    S0: complex
    S1: complex
    params: ModelParams
    endpoints: Endpoints

    @property
    def linearized(self) -> complex:
        """The kernel expanded to first order in alpha."""
        p = self.params
        return self.leading_prefactor * cmath.exp(1j * self.S0 / p.hbar) * (
            1 + p.alpha * (self.f_alpha + 1j * self.S1 / p.hbar)
        )

    def check(self):
        """Assert the decomposition identity of the amplitude."""
        p = self.params
        expected = self.leading_prefactor * (1 + p.alpha * self.f_alpha) * (
            cmath.exp(1j * (self.S0 + p.alpha * self.S1) / p.hbar)
        )
        assert cmath.isclose(
            self.amplitude, expected,
            rel_tol=DECOMPOSITION_TOLERANCE, abs_tol=1e-300
        ), _decomposition_message()


def evaluate(prop: Propagator, e: Endpoints) -> KernelValue:
    """
    Evaluate a propagator between the endpoints.

    Parameters
    ----------
    prop: Propagator
        The propagator to evaluate
    e: Endpoints
        Boundary data; the final point is qf
    Returns
    -------
    The kernel value with its decomposition.
    """

    p = prop.params
    e.require(p.D)

    leading, action, prefactor = prop.forms(e.T)
    x2, y2, xy = invariants(e.qf, e.q0)
    S0 = complex(action.S0(x2, y2, xy))
    S1 = complex(action.S1(x2, y2, xy))
    f = complex(prefactor.f(x2, y2, xy))

    return _value(p, e, leading, f, S0, S1)


def _value(p: ModelParams, e, leading, f, S0, S1) -> KernelValue:
    amplitude = leading * (1 + p.alpha * f) * cmath.exp(
        1j * (S0 + p.alpha * S1) / p.hbar
    )
    value = KernelValue(
        amplitude=complex(amplitude), leading_prefactor=complex(leading),
        f_alpha=f, S0=S0, S1=S1, params=p, endpoints=e
    )
    if __debug__:
        value.check()
    return value


def free_kernel(
        params: ModelParams,
        e: Endpoints,
        spec: Optional[PrefactorSpec] = None
) -> KernelValue:
    """
    First-order free particle kernel
        (m / 2 pi i hbar T)^(D/2) [1 + D(D+2) i alpha hbar m / T
        - 2(D+2) alpha m^2 |dq|^2 / T^2] exp(i S_cl / hbar)
    for real or Euclidean time. A non-canonical spec changes the prefactor
    constants.
    """

    return evaluate(FreeParticle(params, spec), e)


def free_kernel_spectral(params: ModelParams, e: Endpoints) -> KernelValue:
    """
    Free particle kernel rebuilt from its plane-wave expansion,
        K = (2 pi)^(-D) int dk exp(i k.dq - i E(k) T / hbar),
    expanding the quartic part of the dispersion to first order and
    integrating the resulting polynomial against the Gaussian with the
    moment engine. The value of the correction at the stationary momentum
    goes into the action, the remainder into the prefactor.

    Parameters
    ----------
    params: ModelParams
        Physical parameters (omega is ignored)
    e: Endpoints
        Boundary data
    Returns
    -------
    The kernel value with its decomposition.
    """

    e.require(params.D)
    m, hbar, D = params.m, params.hbar, params.D
    T = e.T
    delta = np.asarray(e.qf) - np.asarray(e.q0)

    # exp(-a |k|^2 + 2 b.k) with a = i hbar T / 2m, b = i dq / 2
    weight = GaussianWeight(1j * hbar * T / (2 * m), tuple(0.5j * delta))
    correction = -1j * hbar ** 3 * T / m * MultiPoly.norm_squared(D) ** 2

    leading = weight.volume / (2 * np.pi) ** D
    S0 = -1j * hbar * weight.exponent

    stationary = correction.evaluate(weight.center)
    S1 = -1j * hbar * stationary
    f = expectation(correction, weight) - stationary

    return _value(params, e, leading, complex(f), complex(S0), complex(S1))


def sho_prefactor(
        params: ModelParams,
        e: Endpoints,
        spec: Optional[PrefactorSpec] = None
) -> complex:
    """The first-order prefactor f of the oscillator ansatz."""
    e.require(params.D)
    x2, y2, xy = invariants(e.qf, e.q0)
    return complex(Oscillator(params, spec).prefactor(e.T).f(x2, y2, xy))


def sho_prefactor_1d(params: ModelParams, e: Endpoints) -> complex:
    """
    The one-dimensional prefactor as obtained from the spectral sum,
        f = (3 i hbar m w / 8 s^2)(2wT + 5 s c + wT cos 2wT)
            - (3 m^2 w^2 / 8 s^3)[2wT {3c (q0^2 + qf^2) - 2(2 + cos 2wT) q0 qf}
            + 10 s (q0^2 + qf^2 - 2 q0 qf c) - 6 s^3 (q0^2 + qf^2)]
    with s = sin wT and c = cos wT.
    """

    e.require(1)
    m, hbar, w = params.m, params.hbar, params.omega
    x = w * e.T
    s, c = cmath.sin(x), cmath.cos(x)
    q0, qf = e.q0[0], e.qf[0]
    squares = q0 ** 2 + qf ** 2

    first = 3j * hbar * m * w / (8 * s ** 2) * (2 * x + 5 * s * c + x * cmath.cos(2 * x))
    second = 3 * m ** 2 * w ** 2 / (8 * s ** 3) * (
        2 * x * (3 * c * squares - 2 * (2 + cmath.cos(2 * x)) * q0 * qf)
        + 10 * s * (squares - 2 * q0 * qf * c)
        - 6 * s ** 3 * squares
    )
    return first - second


def sho_kernel(
        params: ModelParams,
        e: Endpoints,
        spec: Optional[PrefactorSpec] = None
) -> KernelValue:
    """
    First-order oscillator kernel
        (m w / 2 pi i hbar sin wT)^(D/2) [1 + alpha f] exp(i/hbar (S0 + alpha S1))
    Euclidean time is handled through the complex time T = -i tau.
    """

    return evaluate(Oscillator(params, spec), e)


def kernel(
        params: ModelParams,
        e: Endpoints,
        spec: Optional[PrefactorSpec] = None
) -> KernelValue:
    """
    Dispatch to the free kernel when omega = 0, to the oscillator otherwise.
    For 0 < |omega T| < CROSSOVER the oscillator forms suffer from
    cancellation: both kernels are evaluated, a disagreement is logged and
    the free value is returned. Below the caustic threshold the oscillator
    is not evaluated at all.
    """

    if params.free:
        return free_kernel(params, e, spec)

    omega_t = params.omega * e.T
    if abs(omega_t) >= CROSSOVER:
        return sho_kernel(params, e, spec)

    free = free_kernel(params, e, spec)
    # the oscillator forms refuse sin wT this close to zero
    if abs(cmath.sin(omega_t)) < CAUSTIC_THRESHOLD:
        return free

    sho = sho_kernel(params, e, spec)
    difference = abs(free.amplitude - sho.amplitude) / abs(free.amplitude)
    if difference > CROSSOVER_TOLERANCE:
        logger.warning(__CROSSOVER_WARNING % (omega_t, difference))
    return free


def _decomposition_message() -> str:
    return __DECOMPOSITION_ERROR
