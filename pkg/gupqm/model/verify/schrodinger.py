import itertools
import numpy as np

from dataclasses import dataclass
from gupqm.model.errors import DomainError
from gupqm.model.kernels.propagator import propagator
from gupqm.model.system.endpoints import Endpoints
from gupqm.model.system.parameters.ModelParams import ModelParams
from gupqm.model.verify.report import ResidualReport
from typing import List, Optional, Tuple

# steps relative to the length scale of the system and to |T|
SPACE_STEP = 1e-3
TIME_STEP = 1e-4
BIHARMONIC_STEP = 2e-2

# fourth-order central stencils on the offsets -2..2 and -3..3
SECOND = np.array([-1, 16, -30, 16, -1]) / 12
FOURTH = np.array([-1, 12, -39, 56, -39, 12, -1]) / 6

__STEP_ERROR = "Finite difference steps must be positive, found %s"


@dataclass(frozen=True)
class SchrodingerSteps:
    """
    Finite difference steps of the Schrodinger residual.

    h_q: float
        Spatial step of the Laplacian
    h_t: float
        Step along the complex time direction
    h_b: float
        Spatial step of the biharmonic stencils
    """

    h_q: float
    h_t: float
    h_b: float

    def __post_init__(self):
        if min(self.h_q, self.h_t, self.h_b) <= 0:
            raise DomainError(_step_message(self))

    @staticmethod
    def default(params: ModelParams, T: complex) -> 'SchrodingerSteps':
        length = params.length_scale(T)
        return SchrodingerSteps(
            h_q=SPACE_STEP * length,
            h_t=TIME_STEP * abs(T),
            h_b=BIHARMONIC_STEP * length
        )


def laplacian_stencil(D: int, h: float) -> Tuple[np.ndarray, np.ndarray]:
    """Offsets (n, D) and weights (n,) of the five-point Laplacian."""
    offsets, weights = [], []
    for axis in range(D):
        for k, c in zip(range(-2, 3), SECOND):
            offset = np.zeros(D)
            offset[axis] = k * h
            offsets.append(offset)
            weights.append(c / h ** 2)
    return np.array(offsets), np.array(weights)


def biharmonic_stencil(D: int, h: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Offsets (n, D) and weights (n,) of the biharmonic operator, written as
    the sum of the fourth derivatives along every axis plus twice the mixed
    terms, the latter as tensor products of the second derivative stencil.
    """

    offsets: List[np.ndarray] = []
    weights: List[float] = []
    for axis in range(D):
        for k, c in zip(range(-3, 4), FOURTH):
            offset = np.zeros(D)
            offset[axis] = k * h
            offsets.append(offset)
            weights.append(c / h ** 4)

    for i, j in itertools.combinations(range(D), 2):
        for (ki, ci), (kj, cj) in itertools.product(
                zip(range(-2, 3), SECOND), repeat=2
        ):
            offset = np.zeros(D)
            offset[i], offset[j] = ki * h, kj * h
            offsets.append(offset)
            weights.append(2 * ci * cj / h ** 4)
    return np.array(offsets), np.array(weights)


def hamiltonian_residual(
        params: ModelParams,
        e: Endpoints,
        steps: SchrodingerSteps
) -> Tuple[complex, complex]:
    """
    Apply i hbar d/dT - H to the kernel as a function of its final point,
        H = -hbar^2/2m Laplacian + alpha hbar^4/m biharmonic + m w^2/2 |q|^2

    Parameters
    ----------
    params: ModelParams
        Physical parameters
    e: Endpoints
        Evaluation point qf, initial point q0 and time
    steps: SchrodingerSteps
        Finite difference steps
    Returns
    -------
    The residual and the kernel value at the evaluation point.
    """

    p = params
    prop = propagator(p)
    T = e.T
    q0 = np.asarray(e.q0)
    qf = np.asarray(e.qf)

    def kernel(points, time):
        return prop.amplitude(points, q0, time)

    # central differences along the direction of T, one Richardson level
    h = steps.h_t * T / abs(T)

    def derivative(step):
        forward, backward = kernel(qf, T + step), kernel(qf, T - step)
        return (forward - backward) / (2 * step)

    d_time = (4 * derivative(h / 2) - derivative(h)) / 3

    offsets, weights = laplacian_stencil(p.D, steps.h_q)
    laplacian = weights @ kernel(qf + offsets, T)

    value = complex(kernel(qf, T))
    result = (
        1j * p.hbar * d_time
        + p.hbar ** 2 / (2 * p.m) * laplacian
        - p.m * p.omega ** 2 / 2 * (qf @ qf) * value
    )
    if p.alpha:
        offsets, weights = biharmonic_stencil(p.D, steps.h_b)
        biharmonic = weights @ kernel(qf + offsets, T)
        result -= p.alpha * p.hbar ** 4 / p.m * biharmonic
    return complex(result), value


def schrodinger_residual(
        params: ModelParams,
        e: Endpoints,
        steps: Optional[SchrodingerSteps] = None
) -> ResidualReport:
    """
    Residual of the time-dependent Schrodinger equation of the first-order
    kernel, by finite differences. The kernel solves the equation up to
    alpha^2: with alpha > 0 the residual is evaluated again at alpha/2 and
    at alpha = 0, and the scaling ratio |R(alpha) - R(0)| / |R(alpha/2) -
    R(0)| (4 for a quadratic residual) is reported.

    Parameters
    ----------
    params: ModelParams
        Physical parameters
    e: Endpoints
        Boundary data; the equation acts on the final point
    steps: SchrodingerSteps
        Finite difference steps, scaled on the system if not given
    Returns
    -------
    The report of |R| relative to |K|.
    """

    e.require(params.D)
    steps = steps or SchrodingerSteps.default(params, e.T)

    residual, value = hamiltonian_residual(params, e, steps)
    ratio = None
    details = {'h_q': steps.h_q, 'h_t': steps.h_t, 'h_b': steps.h_b}
    if params.alpha:
        base, _ = hamiltonian_residual(params.replace(alpha=0), e, steps)
        half, _ = hamiltonian_residual(
            params.replace(alpha=params.alpha / 2), e, steps
        )
        ratio = abs(residual - base) / abs(half - base)
        details['base'] = abs(base)

    return ResidualReport(
        label='schrodinger',
        residual_norm=abs(residual),
        reference_norm=abs(value),
        alpha_used=params.alpha,
        scaling_ratio=ratio,
        details=details
    )


def _step_message(steps: SchrodingerSteps) -> str:
    return __STEP_ERROR % (steps,)
