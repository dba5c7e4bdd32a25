import numpy as np

from gupqm.logger import logger
from gupqm.model.errors import DimensionError, DomainError
from gupqm.model.kernels.kernel import evaluate
from gupqm.model.kernels.propagator import PrefactorSpec, Propagator
from gupqm.model.kernels.propagator import propagator
from gupqm.model.moments.gaussian import expectation
from gupqm.model.moments.quadrature import gaussian_quadrature
from gupqm.model.system.endpoints import Endpoints
from gupqm.model.system.parameters.ModelParams import ModelParams
from gupqm.model.verify.action_shift import leg_form, split_action
from gupqm.model.verify.action_shift import split_weight
from gupqm.model.verify.report import CompositionSplit, ResidualReport
from typing import Optional

# the oscillatory direction is never integrated numerically
MIN_QUADRATURE_NODES = 32
MAX_QUADRATURE_DIMENSION = 2

__REAL_TIME_ERROR = "Quadrature composition requires Euclidean time"
__NODES_ERROR = "Quadrature composition requires at least %d nodes, found %d"
__DIMENSION_ERROR = "Quadrature composition is limited to D <= %d, found %d"


def compose(prop: Propagator, split: CompositionSplit) -> complex:
    """
    Integral over the intermediate point of K(qf, q; T2) K(q, q0; T1), both
    kernels expanded to first order in alpha and the alpha^2 cross term
    dropped. The product is a polynomial times a Gaussian in q and is
    integrated exactly with the moment engine.

    Parameters
    ----------
    prop: Propagator
        The propagator, with its prefactor constants
    split: CompositionSplit
        The split of the time and the endpoints
    Returns
    -------
    The composed first-order kernel K(qf, q0; T1 + T2).
    """

    hbar, alpha = prop.params.hbar, prop.params.alpha
    first = prop.forms(split.T1.T)
    second = prop.forms(split.T2.T)
    gaussian = split_weight(prop, split)
    w = gaussian.weight

    correction = (
        leg_form(first[2], 'f', split.q0)
        + leg_form(second[2], 'f', split.qf)
        + 1j / hbar * split_action(prop, split)
    )
    return complex(
        first[0] * second[0] * w.volume
        * np.exp(gaussian.constant + w.exponent)
        * (1 + alpha * expectation(correction, w))
    )


def composition_check_analytic(
        params: ModelParams,
        e: Endpoints,
        T1: complex,
        spec: Optional[PrefactorSpec] = None
) -> ResidualReport:
    """
    Check the composition law of the first-order kernel,
        int dq K(qf, q; T - T1) K(q, q0; T1) = K(qf, q0; T)
    comparing both sides expanded to first order in alpha. The canonical
    prefactor constants leave a rounding residual; any other choice leaves
    a residual of order alpha.

    Parameters
    ----------
    params: ModelParams
        Physical parameters
    e: Endpoints
        Boundary data and total time
    T1: complex
        Time of the first leg, of the same kind as the total time
    spec: PrefactorSpec
        Prefactor constants, canonical if not given
    Returns
    -------
    The report of the relative residual |LHS - RHS| / |RHS|.
    """

    e.require(params.D)
    prop = propagator(params, spec)
    split = CompositionSplit.of(e, T1)

    lhs = compose(prop, split)
    rhs = evaluate(prop, e).linearized
    logger.debug('Composition at T1 = %s: %s against %s' % (T1, lhs, rhs))

    return ResidualReport(
        label='composition',
        residual_norm=abs(lhs - rhs),
        reference_norm=abs(rhs),
        alpha_used=params.alpha,
        details={'T1': abs(split.T1.T), 'T2': abs(split.T2.T)}
    )


def composition_check_quadrature(
        params: ModelParams,
        e: Endpoints,
        T1: float,
        nodes: int = 64,
        spec: Optional[PrefactorSpec] = None
) -> ResidualReport:
    """
    Euclidean composition law with the intermediate point integrated by
    tensor Gauss-Hermite quadrature. The integrand is the product of the
    first-order kernels evaluated pointwise, so the moment engine plays no
    role.

    Parameters
    ----------
    params: ModelParams
        Physical parameters
    e: Endpoints
        Boundary data, with a Euclidean time
    T1: float
        Euclidean time tau1 of the first leg
    nodes: int
        Number of Hermite nodes per axis
    spec: PrefactorSpec
        Prefactor constants, canonical if not given
    Returns
    -------
    The report of the relative residual against the direct kernel.
    """

    e.require(params.D)
    _check_quadrature(e, nodes)

    prop = propagator(params, spec)
    split = CompositionSplit.of(e, T1)
    w = split_weight(prop, split).weight
    q0, qf = np.asarray(split.q0), np.asarray(split.qf)
    b = np.asarray(w.b)
    alpha = params.alpha

    def integrand(q: np.ndarray) -> np.ndarray:
        first, g1 = prop.parts(q, q0, split.T1.T)
        second, g2 = prop.parts(qf, q, split.T2.T)
        # the rule supplies the weight, which is divided out of the product
        weight = np.exp(-w.a * np.sum(q * q, axis=-1) + 2 * (q @ b))
        return first * second / weight * (1 + alpha * (g1 + g2))

    lhs = gaussian_quadrature(integrand, w, nodes)
    rhs = evaluate(prop, e).linearized

    return ResidualReport(
        label='composition-quadrature',
        residual_norm=abs(lhs - rhs),
        reference_norm=abs(rhs),
        alpha_used=alpha,
        details={'nodes': float(nodes)}
    )


def associativity_check(
        params: ModelParams,
        e: Endpoints,
        T1: complex,
        T2: complex,
        spec: Optional[PrefactorSpec] = None
) -> ResidualReport:
    """
    Three-way split T = T1 + T2 + T3, composed in the two orders
    (K3 K2) K1 and K3 (K2 K1), each inner pair being replaced by the direct
    kernel. The disagreement of the two bracketings is measured, not judged.

    Parameters
    ----------
    params: ModelParams
        Physical parameters
    e: Endpoints
        Boundary data and total time
    T1, T2: complex
        Times of the first two legs, the third one being the remainder
    spec: PrefactorSpec
        Prefactor constants, canonical if not given
    Returns
    -------
    The report of |left - right| relative to the direct kernel.
    """

    e.require(params.D)
    prop = propagator(params, spec)

    left = compose(prop, CompositionSplit.of(e, T1))
    right = compose(prop, CompositionSplit.of(e, T1 + T2))
    direct = evaluate(prop, e).linearized

    return ResidualReport(
        label='associativity',
        residual_norm=abs(left - right),
        reference_norm=abs(direct),
        alpha_used=params.alpha,
        details={
            'left': abs(left - direct) / abs(direct),
            'right': abs(right - direct) / abs(direct)
        }
    )


def _check_quadrature(e: Endpoints, nodes: int):
    if not e.time.euclidean:
        raise DomainError(__REAL_TIME_ERROR)
    if nodes < MIN_QUADRATURE_NODES:
        raise DomainError(__NODES_ERROR % (MIN_QUADRATURE_NODES, nodes))
    if e.D > MAX_QUADRATURE_DIMENSION:
        raise DimensionError(__DIMENSION_ERROR % (MAX_QUADRATURE_DIMENSION, e.D))
