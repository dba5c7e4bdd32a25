import numpy as np

from dataclasses import dataclass
from gupqm.model.errors import DimensionError, DomainError, ParameterError
from typing import List, Optional, Sequence, Tuple

# default momentum step of the finite-difference bracket
STEP = 1e-4

__AXIS_ERROR = "Axis %d out of range 1..%d"
__SPREAD_ERROR = "Momentum spreads must be non negative, found %s"
__LENGTH_ERROR = "Spreads and means have %d and %d components"
__GRID_ERROR = "Momentum grid values must be positive, found %s"
__STEP_ERROR = "Finite difference step must be positive, found %s"
__ALPHA_HBAR_ERROR = "Invalid alpha = %s or hbar = %s"


@dataclass(frozen=True)
class UncertaintyState:
    """
    Momentum statistics of a D-dimensional state.

    dP: Tuple[float, ...]
        Per-component spreads, non negative
    meanP: Tuple[float, ...]
        Per-component means
    alpha: float
        GUP parameter
    hbar: float
        Action quantum
    """

    dP: Tuple[float, ...]
    meanP: Tuple[float, ...]
    alpha: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, 'dP', tuple(np.atleast_1d(self.dP).tolist()))
        object.__setattr__(
            self, 'meanP', tuple(np.atleast_1d(self.meanP).tolist())
        )
        _check_state(self)

    @property
    def D(self) -> int:
        return len(self.dP)


def uncertainty_bound(s: UncertaintyState, i: int) -> float:
    """
    Right side of the GUP inequality along axis i (counted from 1):
    (hbar/2) [1 + alpha (dP^2 + <P>^2) + 2 alpha (dP_i^2 + <P_i>^2)].

    Parameters
    ----------
    s: UncertaintyState
        The momentum statistics
    i: int
        The axis, 1 <= i <= D
    Returns
    -------
    The lower bound on dQ_i dP_i.
    """

    if not 1 <= i <= s.D:
        raise DimensionError(__AXIS_ERROR % (i, s.D))

    dP, meanP = np.asarray(s.dP), np.asarray(s.meanP)
    total = dP @ dP + meanP @ meanP
    axis = dP[i - 1] ** 2 + meanP[i - 1] ** 2
    return float(s.hbar / 2 * (1 + s.alpha * total + 2 * s.alpha * axis))


def minimal_length(alpha: float, hbar: float) -> Tuple[float, Optional[float]]:
    """
    Minimal position uncertainty of the one-dimensional GUP.

    Returns
    -------
    The pair (sqrt(3 alpha hbar^2), dP*) where dP* = 1/sqrt(3 alpha) is the
    spread attaining it, or None when alpha = 0.
    """

    if alpha < 0 or hbar <= 0:
        raise ParameterError(__ALPHA_HBAR_ERROR % (alpha, hbar))
    length = float(np.sqrt(3 * alpha * hbar ** 2))
    return length, (float(1 / np.sqrt(3 * alpha)) if alpha > 0 else None)


def position_bound(alpha: float, hbar: float, dP: float) -> float:
    """(hbar / 2 dP)(1 + 3 alpha dP^2), the one-dimensional bound on dQ."""
    return hbar / (2 * dP) * (1 + 3 * alpha * dP ** 2)


def bound_curve(
        alpha: float,
        hbar: float,
        dP_grid: Sequence[float]
) -> List[Tuple[float, float]]:
    """
    Sample the boundary of the allowed region of the one-dimensional GUP.

    Parameters
    ----------
    alpha: float
        GUP parameter
    hbar: float
        Action quantum
    dP_grid: Sequence[float]
        Positive momentum spreads
    Returns
    -------
    The list of pairs (dP, dQ bound).
    """

    if any(dP <= 0 for dP in dP_grid):
        raise DomainError(__GRID_ERROR % (list(dP_grid),))
    return [(float(dP), position_bound(alpha, hbar, dP)) for dP in dP_grid]


def momentum_map(p: Sequence[float], alpha: float) -> np.ndarray:
    """Map canonical momenta to the GUP ones, P_i = p_i (1 + alpha |p|^2)."""
    p = np.asarray(p, dtype=float)
    return p * (1 + alpha * (p @ p))


def momentum_jacobian(p: Sequence[float], alpha: float) -> np.ndarray:
    """Analytic dP_j / dp_i = delta_ij (1 + alpha |p|^2) + 2 alpha p_i p_j."""
    p = np.asarray(p, dtype=float)
    return np.eye(len(p)) * (1 + alpha * (p @ p)) + 2 * alpha * np.outer(p, p)


def commutator(
        p: Sequence[float],
        alpha: float,
        hbar: float,
        step: float = STEP
) -> np.ndarray:
    """
    The bracket [q_i, P_j] = i hbar dP_j / dp_i, with the derivative taken by
    central differences of the momentum map and one Richardson level.

    Parameters
    ----------
    p: Sequence[float]
        The canonical momentum where to evaluate the bracket
    alpha: float
        GUP parameter
    hbar: float
        Action quantum
    step: float
        Finite difference step in momentum units
    Returns
    -------
    The D x D complex matrix of brackets, row i and column j.
    """

    if step <= 0:
        raise DomainError(__STEP_ERROR % step)
    p = np.asarray(p, dtype=float)

    def central(h):
        rows = [
            (momentum_map(p + h * e, alpha) - momentum_map(p - h * e, alpha))
            / (2 * h)
            for e in np.eye(len(p))
        ]
        return np.array(rows)

    jacobian = (4 * central(step / 2) - central(step)) / 3
    return 1j * hbar * jacobian


def commutator_check(
        p: Sequence[float],
        alpha: float,
        hbar: float,
        step: float = STEP
) -> np.ndarray:
    """
    Defect between the finite-difference bracket and the modified
    commutation relation i hbar (delta_ij + alpha delta_ij |P|^2 +
    2 alpha P_i P_j) evaluated with the GUP momenta. The defect is of order
    alpha^2 plus the finite difference error.
    """

    P = momentum_map(p, alpha)
    relation = 1j * hbar * (
        np.eye(len(P)) * (1 + alpha * (P @ P)) + 2 * alpha * np.outer(P, P)
    )
    return commutator(p, alpha, hbar, step) - relation


def _check_state(s: UncertaintyState):
    if len(s.dP) != len(s.meanP):
        raise DimensionError(__LENGTH_ERROR % (len(s.dP), len(s.meanP)))
    if any(v < 0 for v in s.dP):
        raise ParameterError(__SPREAD_ERROR % (s.dP,))
