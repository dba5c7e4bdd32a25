import numpy as np

from dataclasses import dataclass
from gupqm.model.classical.action import check_caustic
from gupqm.model.errors import DimensionError, DomainError
from gupqm.model.system.endpoints import Endpoints
from gupqm.model.system.parameters.ModelParams import ModelParams
from typing import Tuple, Union

__DIMENSION_ERROR = "Classical trajectories are built for D = 2, found D = %d"
__FREE_ERROR = "Oscillator trajectory requires omega > 0, use a straight line"
__EUCLIDEAN_ERROR = "Classical trajectories require a real time"
__TIME_ERROR = "Time %s outside the path interval [0, %s]"

Time = Union[float, np.ndarray]


@dataclass(frozen=True)
class ClassicalPath:
    """
    First-order classical trajectory of the two-dimensional oscillator,
        q_i(t) = A_i cos wt + B_i sin wt + alpha [F_i cos wt + G_i sin wt
                 + (m^2 w^2 / 8)(-4 C3 wt cos wt + 4 C1 wt sin wt
                 - C2 cos 3wt - C4 sin 3wt)]
    where the cubic blocks of the second coordinate (C_tilde) are those of
    the first with the labels 1 and 2 exchanged.
    """

    A: Tuple[float, float]
    B: Tuple[float, float]
    F: Tuple[float, float]
    G: Tuple[float, float]
    C: Tuple[float, float, float, float]
    C_tilde: Tuple[float, float, float, float]
    params: ModelParams
    T: float

    @property
    def kappa(self) -> float:
        return self.params.m ** 2 * self.params.omega ** 2 / 8

    @property
    def blocks(self) -> np.ndarray:
        """Cubic blocks as a 4 x 2 array, one column per coordinate."""
        return np.array([self.C, self.C_tilde]).T


def cubic_blocks(A1, A2, B1, B2) -> Tuple[float, float, float, float]:
    """Coefficients C1..C4 of the first-order correction of coordinate 1."""

    C1 = -3 * A1 * (A1 ** 2 + A2 ** 2 + B1 ** 2) - 2 * A2 * B1 * B2 - A1 * B2 ** 2
    C2 = 3 * (A1 ** 3 - 2 * A2 * B1 * B2 + A1 * (A2 ** 2 - 3 * B1 ** 2 - B2 ** 2))
    C3 = (
        -3 * A1 ** 2 * B1 - 2 * A1 * A2 * B2 - A2 ** 2 * B1
        - 3 * B1 * (B1 ** 2 + B2 ** 2)
    )
    C4 = 3 * (
        3 * A1 ** 2 * B1 + 2 * A1 * A2 * B2 - B1 * (-A2 ** 2 + B1 ** 2 + B2 ** 2)
    )
    return C1, C2, C3, C4


def sho_trajectory_2d(params: ModelParams, e: Endpoints) -> ClassicalPath:
    """
    Build the first-order classical trajectory of the two-dimensional
    oscillator joining the endpoints in the real time T.

    Parameters
    ----------
    params: ModelParams
        Physical parameters with D = 2 and omega > 0
    e: Endpoints
        Boundary data, with real time away from caustics
    Returns
    -------
    The classical path, passing through q0 at t = 0 and qf at t = T.
    """

    if params.D != 2 or e.D != 2:
        raise DimensionError(__DIMENSION_ERROR % e.D)
    if params.free:
        raise DomainError(__FREE_ERROR)
    T = e.T
    if e.time.euclidean or T.imag != 0:
        raise DomainError(__EUCLIDEAN_ERROR)

    T = T.real
    x = params.omega * T
    s, c = (v.real for v in check_caustic(params.omega, T))
    kappa = params.m ** 2 * params.omega ** 2 / 8

    A = e.q0
    B = tuple((qf - q0 * c) / s for q0, qf in zip(e.q0, e.qf))
    C = cubic_blocks(A[0], A[1], B[0], B[1])
    C_tilde = cubic_blocks(A[1], A[0], B[1], B[0])

    def fixing(blocks):
        C1, C2, C3, C4 = blocks
        return kappa / s * (
            (4 * x * C3 - C2) * c - 4 * x * C1 * s
            + C2 * np.cos(3 * x) + C4 * np.sin(3 * x)
        )

    return ClassicalPath(
        A=A, B=B,
        F=(kappa * C[1], kappa * C_tilde[1]),
        G=(fixing(C), fixing(C_tilde)),
        C=C, C_tilde=C_tilde,
        params=params, T=T
    )


def _derivative(path: ClassicalPath, t: Time, order: int) -> np.ndarray:
    """
    Derivative of the given order (0, 1 or 2) of the path with respect to
    the phase wt; the result has shape (..., 2).
    """

    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(t > path.T):
        raise DomainError(__TIME_ERROR % (t, path.T))

    th = path.params.omega * t[..., None]
    s, c = np.sin(th), np.cos(th)
    s3, c3 = np.sin(3 * th), np.cos(3 * th)
    A, B = np.asarray(path.A), np.asarray(path.B)
    F, G = np.asarray(path.F), np.asarray(path.G)
    C1, C2, C3, C4 = path.blocks

    if order == 0:
        harmonic = A * c + B * s
        linear = F * c + G * s
        cubic = -4 * C3 * th * c + 4 * C1 * th * s - C2 * c3 - C4 * s3
    elif order == 1:
        harmonic = -A * s + B * c
        linear = -F * s + G * c
        cubic = (
            -4 * C3 * (c - th * s) + 4 * C1 * (s + th * c)
            + 3 * C2 * s3 - 3 * C4 * c3
        )
    else:
        harmonic = -A * c - B * s
        linear = -F * c - G * s
        cubic = (
            -4 * C3 * (-2 * s - th * c) + 4 * C1 * (2 * c - th * s)
            + 9 * C2 * c3 + 9 * C4 * s3
        )

    return harmonic + path.params.alpha * (linear + path.kappa * cubic)


def path_eval(path: ClassicalPath, t: Time) -> np.ndarray:
    """Position along the path at time t, 0 <= t <= T."""
    return _derivative(path, t, 0)


def path_velocity(path: ClassicalPath, t: Time) -> np.ndarray:
    """Analytic time derivative of the path."""
    return path.params.omega * _derivative(path, t, 1)


def path_acceleration(path: ClassicalPath, t: Time) -> np.ndarray:
    """Analytic second time derivative of the path."""
    return path.params.omega ** 2 * _derivative(path, t, 2)


def eom_residual(path: ClassicalPath, t: Time) -> np.ndarray:
    """
    Residual of the first-order equations of motion
        q1'' + w^2 q1 - 4 alpha m^2 [(3 q1'^2 + q2'^2) q1'' + 2 q1' q2' q2'']
    and its partner with the coordinates exchanged. For the first-order
    path it is of order alpha^2 on the whole interval.
    """

    q = path_eval(path, t)
    v = path_velocity(path, t)
    a = path_acceleration(path, t)
    p = path.params

    v1, v2 = v[..., 0], v[..., 1]
    a1, a2 = a[..., 0], a[..., 1]
    coupling = np.stack([
        (3 * v1 ** 2 + v2 ** 2) * a1 + 2 * v1 * v2 * a2,
        (v1 ** 2 + 3 * v2 ** 2) * a2 + 2 * v1 * v2 * a1
    ], axis=-1)
    return a + p.omega ** 2 * q - 4 * p.alpha * p.m ** 2 * coupling


def max_eom_residual(
        params: ModelParams,
        e: Endpoints,
        samples: int = 65
) -> float:
    """Largest residual norm over uniformly spaced times of [0, T]."""
    path = sho_trajectory_2d(params, e)
    t = np.linspace(0, path.T, samples)
    return float(np.max(np.linalg.norm(eom_residual(path, t), axis=-1)))


def eom_scaling(
        params: ModelParams,
        e: Endpoints,
        alpha: float,
        samples: int = 65
) -> float:
    """
    Ratio between the largest residuals obtained with alpha and alpha / 2;
    close to 4 when the path is correct to first order.
    """

    full = max_eom_residual(params.replace(alpha=alpha), e, samples)
    half = max_eom_residual(params.replace(alpha=alpha / 2), e, samples)
    return full / half
