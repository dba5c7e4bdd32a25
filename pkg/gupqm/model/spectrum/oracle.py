import numpy as np
import scipy.linalg

from dataclasses import dataclass
from gupqm.logger import logger
from gupqm.model.errors import ConvergenceError, DimensionError, DomainError
from gupqm.model.spectrum.energies import formula_levels, shell_states
from gupqm.model.spectrum.energies import sho_energy_2d
from gupqm.model.system.parameters.ModelParams import ModelParams
from typing import List, Tuple

MIN_BASIS = 16
MAX_BASIS = 64
# largest change of a requested level when the basis is doubled
CONVERGENCE_TOLERANCE = 1e-10
# the squared momentum is built in a basis this much larger than the target
# one, so that the truncated quartic has exact matrix elements
PADDING = 4

__BASIS_ERROR = "Oscillator basis must hold %d to %d states per axis, found %d"
__LEVELS_ERROR = "Cannot extract %d levels from %d states"
__DIMENSION_ERROR = "The matrix oracle handles D = 1 and D = 2, found D = %d"
__FREE_ERROR = "The matrix oracle requires omega > 0"
__CONVERGENCE_ERROR = (
    "Levels changed by %.3g when doubling the basis from %d states per axis"
)


def ladder(size: int) -> np.ndarray:
    """Annihilation operator in the number basis, a|n> = sqrt(n)|n - 1>."""
    return np.diag(np.sqrt(np.arange(1, size)), 1)


def momentum_squared(params: ModelParams, size: int) -> np.ndarray:
    """
    Matrix of p^2 = -(m hbar w / 2)(a^+ - a)^2 on the first size states,
    computed in a padded basis and truncated.
    """

    a = ladder(size + PADDING)
    difference = a.T - a
    p2 = -params.m * params.hbar * params.omega / 2 * (difference @ difference)
    return p2[:size, :size]


def momentum_quartic(params: ModelParams, size: int) -> np.ndarray:
    """Matrix of p^4 on the first size states, exact up to rounding."""
    p2 = momentum_squared(params, size + PADDING)
    return (p2 @ p2)[:size, :size]


def parity_blocks(D: int, size: int) -> List[np.ndarray]:
    """
    Quantum numbers of the product states, shape (D, count), grouped by the
    parity of every quantum number; the perturbation changes each of them by
    even amounts only.
    """

    numbers = np.indices((size,) * D).reshape(D, -1)
    labels = np.zeros(numbers.shape[1], dtype=int)
    for axis in range(D):
        labels = 2 * labels + numbers[axis] % 2
    return [numbers[:, labels == label] for label in range(2 ** D)]


def hamiltonian(
        params: ModelParams,
        size: int,
        states: np.ndarray = None
) -> np.ndarray:
    """
    Dense matrix of H = |p|^2 / 2m + (alpha / m)(|p|^2)^2 + m w^2 |q|^2 / 2
    between product number states, size states per axis.

    Parameters
    ----------
    params: ModelParams
        Physical parameters, D in {1, 2}
    size: int
        Number of oscillator states per axis
    states: np.ndarray
        Quantum numbers of the states, shape (D, count); all the product
        states when omitted
    Returns
    -------
    The (count, count) symmetric matrix.
    """

    if states is None:
        states = np.indices((size,) * params.D).reshape(params.D, -1)

    coupling = params.alpha / params.m
    p2 = momentum_squared(params, size)
    single = (
        np.diag(params.hbar * params.omega * (np.arange(size) + 0.5))
        + coupling * momentum_quartic(params, size)
    )

    rows, columns = states[:, :, None], states[:, None, :]
    if params.D == 1:
        return single[rows[0], columns[0]]

    same = rows == columns
    return (
        single[rows[0], columns[0]] * same[1]
        + same[0] * single[rows[1], columns[1]]
        + 2 * coupling * p2[rows[0], columns[0]] * p2[rows[1], columns[1]]
    )


def _eigenvalues(params: ModelParams, size: int) -> np.ndarray:
    values = [
        scipy.linalg.eigh(hamiltonian(params, size, block), eigvals_only=True)
        for block in parity_blocks(params.D, size)
    ]
    return np.sort(np.concatenate(values))


def oscillator_matrix_oracle(
        params: ModelParams,
        basis_per_axis: int = 32,
        levels: int = 6
) -> List[float]:
    """
    Lowest eigenvalues of the GUP oscillator by dense diagonalisation in the
    truncated number basis. The result is guarded by a second diagonalisation
    with a doubled basis.

    Parameters
    ----------
    params: ModelParams
        Physical parameters with omega > 0 and D in {1, 2}
    basis_per_axis: int
        Number of oscillator states per axis
    levels: int
        Number of eigenvalues to return
    Returns
    -------
    The requested levels in ascending order.
    """

    _check_oracle(params, basis_per_axis, levels)
    logger.info(
        "Diagonalising D = %d oscillator with %d states per axis"
        % (params.D, basis_per_axis)
    )

    coarse = _eigenvalues(params, basis_per_axis)[:levels]
    fine = _eigenvalues(params, 2 * basis_per_axis)[:levels]

    change = float(np.max(np.abs(fine - coarse)))
    logger.debug("Basis doubling changed the levels by %.3g" % change)
    if change >= CONVERGENCE_TOLERANCE:
        raise ConvergenceError(__CONVERGENCE_ERROR % (change, basis_per_axis))
    return coarse.tolist()


@dataclass(frozen=True)
class ShellReport:
    """
    Comparison of the first-order formula with the oracle inside the
    degenerate shell n1 + n2 = shell of the two-dimensional oscillator.
    Shifts are measured from hbar w (shell + 1) in units of alpha m hbar^2 w^2.
    """

    shell: int
    states: Tuple[Tuple[int, int], ...]
    formula: Tuple[float, ...]
    oracle: Tuple[float, ...]
    formula_shift: Tuple[float, ...]
    oracle_shift: Tuple[float, ...]
    trace_delta: float


def shell_report(
        params: ModelParams,
        shell: int,
        basis_per_axis: int = 32
) -> ShellReport:
    """
    Report the formula levels of a shell against the oracle eigenvalues of
    the same shell. No agreement is implied when the shell is degenerate.
    """

    if params.D != 2:
        raise DimensionError(__DIMENSION_ERROR % params.D)

    states = tuple(shell_states(shell))
    formula = tuple(sho_energy_2d(n1, n2, params).value for n1, n2 in states)
    below = shell * (shell + 1) // 2
    oracle = tuple(oscillator_matrix_oracle(
        params, basis_per_axis, below + shell + 1
    )[below:])

    base = params.hbar * params.omega * (shell + 1)
    unit = params.alpha * params.m * params.hbar ** 2 * params.omega ** 2

    def shifts(values):
        return tuple((v - base) / unit if unit else 0.0 for v in values)

    return ShellReport(
        shell=shell, states=states,
        formula=formula, oracle=oracle,
        formula_shift=shifts(formula), oracle_shift=shifts(oracle),
        trace_delta=float(sum(oracle) - sum(formula))
    )


def formula_against_oracle(
        params: ModelParams,
        levels: int,
        basis_per_axis: int = 32
) -> List[Tuple[float, float]]:
    """Pairs (formula, oracle) for the lowest levels."""
    formula = [level.value for level in formula_levels(params, levels)]
    oracle = oscillator_matrix_oracle(params, basis_per_axis, levels)
    return list(zip(formula, oracle))


def _check_oracle(params: ModelParams, size: int, levels: int):
    if params.D not in (1, 2):
        raise DimensionError(__DIMENSION_ERROR % params.D)
    if params.free:
        raise DomainError(__FREE_ERROR)
    if not MIN_BASIS <= size <= MAX_BASIS:
        raise DomainError(__BASIS_ERROR % (MIN_BASIS, MAX_BASIS, size))
    if levels > size ** params.D:
        raise DomainError(__LEVELS_ERROR % (levels, size ** params.D))
