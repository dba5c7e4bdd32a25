import numpy as np

from dataclasses import dataclass
from gupqm.model.classical.action import ActionCoefficients, check_caustic
from gupqm.model.classical.action import invariants
from gupqm.model.errors import DomainError
from gupqm.model.kernels.propagator import Propagator, propagator
from gupqm.model.moments.gaussian import GaussianWeight, expectation
from gupqm.model.moments.polynomial import MultiPoly
from gupqm.model.system.parameters.ModelParams import ModelParams
from gupqm.model.verify.report import CompositionSplit
from typing import Sequence

__FREE_ERROR = "The closed action shift is defined for the oscillator only"


@dataclass(frozen=True)
class SplitWeight:
    """
    Gaussian part of the product K(qf, q; T2) K(q, q0; T1) as a function of
    the intermediate point,
        exp(i/hbar (S0(q, q0; T1) + S0(qf, q; T2))) = exp(constant) weight(q)
    """

    weight: GaussianWeight
    constant: complex


def split_weight(prop: Propagator, split: CompositionSplit) -> SplitWeight:
    """
    Collect the zeroth-order actions of the two legs of a split into a
    Gaussian weight in the intermediate point.
    """

    hbar = prop.params.hbar
    first = prop.action(split.T1.T)
    second = prop.action(split.T2.T)
    q0, qf = np.asarray(split.q0), np.asarray(split.qf)

    a = -1j / hbar * (first.A + second.A)
    b = 0.5j / hbar * (first.B * q0 + second.B * qf)
    constant = 1j / hbar * (first.A * (q0 @ q0) + second.A * (qf @ qf))
    return SplitWeight(GaussianWeight(a, tuple(b)), complex(constant))


def leg_form(
        coefficients,
        method: str,
        fixed: Sequence[float]
) -> MultiPoly:
    """
    Polynomial in the intermediate point q of one form (S0, S1 or f) of a
    leg, the other point of the leg being fixed. The forms are symmetric,
    so the side of q does not matter.
    """

    D = len(fixed)
    q2 = MultiPoly.norm_squared(D)
    y2 = float(np.dot(fixed, fixed))
    qy = MultiPoly.dot(D, fixed)
    return getattr(coefficients, method)(q2, y2, qy)


def split_action(prop: Propagator, split: CompositionSplit) -> MultiPoly:
    """S1(q, q0; T1) + S1(qf, q; T2) as a polynomial in q."""
    first = prop.action(split.T1.T)
    second = prop.action(split.T2.T)
    return (
        leg_form(first, 'S1', split.q0)
        + leg_form(second, 'S1', split.qf)
    )


def delta_S(params: ModelParams, split: CompositionSplit) -> complex:
    """
    Closed form of the mean first-order action of a split oscillator path
    in excess of the direct action,
        dS = sum_j -(D+2) m^3 w^3 / (32 s_j^4) [X_j/a^2 (D/4 + b^2/a)
             - 2 Y_j (y_j.b)/a^2 + 2 Z_j |y_j|^2 / a]
    the sum running over the legs (T1, q0) and (T2, qf), with s_j the sine
    of the leg, x_j = w T_j and
        X = 12x + 8 sin 2x + sin 4x
        Y = 12x cos x + 11 sin x + 3 sin 3x
        Z = 4x + 2x cos 2x + 5 sin 2x

    Parameters
    ----------
    params: ModelParams
        Oscillator parameters, omega > 0
    split: CompositionSplit
        The split and its endpoints
    Returns
    -------
    The shift, complex in general.
    """

    if params.free:
        raise DomainError(_free_message())
    split.endpoints.require(params.D)

    m, w, D = params.m, params.omega, params.D
    gaussian = split_weight(propagator(params), split).weight
    a, b = gaussian.a, np.asarray(gaussian.b)
    b2 = gaussian.b_squared

    total = 0j
    for time, y in ((split.T1, split.q0), (split.T2, split.qf)):
        s, c = check_caustic(w, time.T)
        x = w * time.T
        y = np.asarray(y)
        X = 12 * x + 8 * np.sin(2 * x) + np.sin(4 * x)
        Y = 12 * x * c + 11 * s + 3 * np.sin(3 * x)
        Z = 4 * x + 2 * x * np.cos(2 * x) + 5 * np.sin(2 * x)

        bracket = (
            X / a ** 2 * (D / 4 + b2 / a)
            - 2 * Y * complex(y @ b) / a ** 2
            + 2 * Z * complex(y @ y) / a
        )
        total += -(D + 2) * m ** 3 * w ** 3 / (32 * s ** 4) * bracket
    return complex(total)


def delta_S_moments(params: ModelParams, split: CompositionSplit) -> complex:
    """
    The same shift computed with the moment engine, as the Gaussian mean of
    S1(q, q0; T1) + S1(qf, q; T2) minus S1(qf, q0; T). Applies to the free
    particle as well.
    """

    split.endpoints.require(params.D)
    prop = propagator(params)
    gaussian = split_weight(prop, split).weight

    mean = expectation(split_action(prop, split), gaussian)
    direct = _direct_S1(prop.action(split.endpoints.T), split)
    return complex(mean - direct)


def _direct_S1(coefficients: ActionCoefficients, split: CompositionSplit):
    return complex(coefficients.S1(*invariants(split.qf, split.q0)))


def _free_message() -> str:
    return __FREE_ERROR
