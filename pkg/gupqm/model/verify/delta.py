import numpy as np

from dataclasses import dataclass
from gupqm.model.errors import DimensionError, DomainError
from gupqm.model.kernels.propagator import Propagator, propagator
from gupqm.model.moments.gaussian import GaussianWeight, expectation
from gupqm.model.system.endpoints import TimeArg, Vector, principal_power
from gupqm.model.system.parameters.ModelParams import ModelParams
from gupqm.model.verify.action_shift import leg_form
from gupqm.model.verify.report import ResidualReport
from typing import Optional, Sequence

__WIDTH_ERROR = "Test function width must be positive, found %s"
__TAU_ERROR = "The delta limit requires tau > 0, found %s"
__DIMENSION_ERROR = "Dimension %d required, found point %d and test function %d"


@dataclass(frozen=True)
class TestFunction:
    """
    Normalized Gaussian g(q) = (pi w^2)^(-D/2) exp(-|q - center|^2 / w^2).
    Without a width, g is the constant 1 (the limit of infinite width
    without normalization).
    """

    __test__ = False

    center: Vector
    width: Optional[float] = 1.0

    def __post_init__(self):
        object.__setattr__(
            self, 'center', tuple(float(c) for c in np.atleast_1d(self.center))
        )
        if self.width is not None and not self.width > 0:
            raise DomainError(_width_message(self.width))

    @property
    def D(self) -> int:
        return len(self.center)

    def __call__(self, q: Sequence[float]) -> float:
        if self.width is None:
            return 1.0
        delta = np.asarray(q, dtype=float) - np.asarray(self.center)
        w2 = self.width ** 2
        return float(
            (np.pi * w2) ** (-self.D / 2) * np.exp(-(delta @ delta) / w2)
        )


def smear(
        prop: Propagator,
        testfn: TestFunction,
        qf: Sequence[float],
        tau: float
) -> complex:
    """
    Integral over q0 of K(qf, q0; -i tau) g(q0), the kernel expanded to first
    order in alpha. As a function of q0 the kernel is a polynomial times a
    Gaussian, and so is its product with g.

    Parameters
    ----------
    prop: Propagator
        The propagator
    testfn: TestFunction
        The function g
    qf: Sequence[float]
        Final point of the kernel
    tau: float
        Euclidean time
    Returns
    -------
    The value of the integral.
    """

    p = prop.params
    T = TimeArg.imaginary(tau).T
    leading, action, prefactor = prop.forms(T)
    qf = np.asarray(qf, dtype=float)

    a = -1j / p.hbar * action.A
    b = 0.5j / p.hbar * action.B * qf
    constant = 1j / p.hbar * action.A * (qf @ qf)
    factor = 1.0
    if testfn.width is not None:
        w2 = testfn.width ** 2
        center = np.asarray(testfn.center)
        a = a + 1 / w2
        b = b + center / w2
        constant = constant - (center @ center) / w2
        factor = principal_power(np.pi * w2, -p.D / 2)

    weight = GaussianWeight(a, tuple(b))
    correction = (
        leg_form(prefactor, 'f', qf)
        + 1j / p.hbar * leg_form(action, 'S1', qf)
    )
    return complex(
        leading * factor * weight.volume
        * np.exp(constant + weight.exponent)
        * (1 + p.alpha * expectation(correction, weight))
    )


def delta_limit_check(
        params: ModelParams,
        testfn: TestFunction,
        tau: float,
        qf: Optional[Sequence[float]] = None
) -> ResidualReport:
    """
    Check that the Euclidean kernel tends to a delta function: the smeared
    test function approaches g(qf) linearly in tau. The deviation is also
    measured at tau/2, giving the slope ratio (2 for a linear approach).

    Parameters
    ----------
    params: ModelParams
        Physical parameters
    testfn: TestFunction
        The Gaussian test function
    tau: float
        Small Euclidean time
    qf: Sequence[float]
        Evaluation point, the center of the test function if not given
    Returns
    -------
    The report of |int K g - g(qf)|, with the slope ratio as scaling ratio.
    """

    if not tau > 0:
        raise DomainError(_tau_message(tau))
    qf = testfn.center if qf is None else tuple(qf)
    if len(qf) != params.D or testfn.D != params.D:
        raise DimensionError(_dimension_message(params.D, len(qf), testfn.D))

    prop = propagator(params)
    reference = testfn(qf)
    deviation = abs(smear(prop, testfn, qf, tau) - reference)
    half = abs(smear(prop, testfn, qf, tau / 2) - reference)

    return ResidualReport(
        label='delta-limit' if testfn.width is not None else 'normalization',
        residual_norm=deviation,
        reference_norm=abs(reference),
        alpha_used=params.alpha,
        scaling_ratio=deviation / half if half > 0 else None,
        details={'tau': tau, 'slope': deviation / tau, 'half': half}
    )


def normalization_check(
        params: ModelParams,
        qf: Sequence[float],
        tau: float
) -> ResidualReport:
    """
    Integral of the Euclidean kernel over the initial point, measuring the
    deviation from 1. It vanishes for the free particle and grows linearly
    in tau with the potential.
    """

    return delta_limit_check(
        params, TestFunction(tuple(qf), None), tau, qf
    )


def _dimension_message(D: int, found: int, center: int) -> str:
    return __DIMENSION_ERROR % (D, found, center)


def _tau_message(tau) -> str:
    return __TAU_ERROR % tau


def _width_message(width) -> str:
    return __WIDTH_ERROR % width
