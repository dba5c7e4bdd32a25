import numpy as np

from dataclasses import dataclass
from gupqm.model.errors import CausticError, DomainError
from gupqm.model.system.endpoints import Endpoints
from gupqm.model.system.parameters.ModelParams import ModelParams
from typing import Tuple

# below this value of |sin(omega T)| the oscillator forms are refused
CAUSTIC_THRESHOLD = 1e-8

__CAUSTIC_ERROR = "Caustic: |sin(omega T)| = %.3g below %.0e at omega T = %s"
__FREE_ERROR = "The oscillator forms require omega > 0"


def check_caustic(omega: float, T: complex) -> Tuple[complex, complex]:
    """
    Returns sin(omega T) and cos(omega T), raising a CausticError when the
    sine is below the caustic threshold.
    """

    omega_t = omega * complex(T)
    s, c = np.sin(omega_t), np.cos(omega_t)
    if abs(s) < CAUSTIC_THRESHOLD:
        raise CausticError(
            __CAUSTIC_ERROR % (abs(s), CAUSTIC_THRESHOLD, omega_t), omega_t
        )
    return complex(s), complex(c)


def invariants(x, y) -> Tuple:
    """
    The rotation invariants (|x|^2, |y|^2, x.y) of two points, contracting
    the last axis, so that batches of points are accepted.
    """

    x, y = np.asarray(x), np.asarray(y)
    return (
        np.sum(x * x, axis=-1),
        np.sum(y * y, axis=-1),
        np.sum(x * y, axis=-1)
    )


@dataclass(frozen=True)
class ActionCoefficients:
    """
    Coefficients of the classical action between points x and y,
        S0 = A (|x|^2 + |y|^2) + B x.y
        S1 = P (|x|^4 + |y|^4) + Q (x.y)(|x|^2 + |y|^2)
             + R (2 (x.y)^2 + |x|^2 |y|^2)
    in terms of the invariants. The forms are symmetric under x <-> y and
    accept numbers, arrays or polynomials as invariants.
    """

    A: complex
    B: complex
    P: complex
    Q: complex
    R: complex

    def S0(self, x2, y2, xy):
        return self.A * (x2 + y2) + self.B * xy

    def S1(self, x2, y2, xy):
        return (
            self.P * (x2 * x2 + y2 * y2)
            + self.Q * xy * (x2 + y2)
            + self.R * (2 * xy * xy + x2 * y2)
        )


def free_action_coefficients(params: ModelParams, T: complex):
    """Action coefficients of the free particle, S = (m/2T)|dq|^2 (1 - 2
    alpha m^2 |dq|^2 / T^2)."""

    T = complex(T)
    m = params.m
    cube = m ** 3 / T ** 3
    return ActionCoefficients(
        A=m / (2 * T), B=-m / T, P=-cube, Q=4 * cube, R=-2 * cube
    )


def sho_action_coefficients(params: ModelParams, T: complex):
    """
    Action coefficients of the isotropic oscillator. Valid in any dimension,
    for real and complex (Euclidean) time.
    """

    if params.free:
        raise DomainError(__FREE_ERROR)

    m, w = params.m, params.omega
    s, c = check_caustic(w, T)
    x = w * complex(T)
    k = m ** 3 * w ** 3 / (32 * s ** 4)

    return ActionCoefficients(
        A=m * w * c / (2 * s),
        B=-m * w / s,
        P=-k * (12 * x + 8 * np.sin(2 * x) + np.sin(4 * x)),
        Q=4 * k * (12 * x * c + 11 * s + 3 * np.sin(3 * x)),
        R=-4 * k * (4 * x + 2 * x * np.cos(2 * x) + 5 * np.sin(2 * x))
    )


@dataclass(frozen=True)
class ActionPair:
    """
    Classical action S0 + alpha S1 along the first-order classical path.
    Both terms are real for real time.
    """

    S0: complex
    S1: complex

    def total(self, alpha: float) -> complex:
        return self.S0 + alpha * self.S1


def _pair(coefficients: ActionCoefficients, e: Endpoints) -> ActionPair:
    x2, y2, xy = invariants(e.qf, e.q0)
    return ActionPair(
        S0=_scalar(coefficients.S0(x2, y2, xy)),
        S1=_scalar(coefficients.S1(x2, y2, xy))
    )


def _scalar(value):
    value = complex(value)
    return value.real if value.imag == 0 else value


def sho_action(params: ModelParams, e: Endpoints) -> ActionPair:
    """
    Classical action of the oscillator between the endpoints.

    Parameters
    ----------
    params: ModelParams
        Physical parameters, with omega > 0
    e: Endpoints
        Boundary data
    Returns
    -------
    The pair (S0, S1).
    """

    e.require(params.D)
    return _pair(sho_action_coefficients(params, e.T), e)


def free_action(params: ModelParams, e: Endpoints) -> ActionPair:
    """
    Classical action of the free particle, S0 = m|dq|^2 / 2T and
    S1 = -m^3 |dq|^4 / T^3.
    """

    e.require(params.D)
    return _pair(free_action_coefficients(params, e.T), e)


def action(params: ModelParams, e: Endpoints) -> ActionPair:
    """Dispatch on omega between the free and the oscillator action."""
    if params.free:
        return free_action(params, e)
    return sho_action(params, e)
