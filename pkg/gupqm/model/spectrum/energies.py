import numpy as np

from dataclasses import dataclass
from gupqm.model.errors import DimensionError, DomainError
from gupqm.model.system.parameters.ModelParams import ModelParams
from typing import List, Optional, Sequence

__QUANTUM_NUMBER_ERROR = "Quantum numbers must be non negative, found %s"
__DIMENSION_ERROR = "Spectra are available for D = 1 and D = 2, found D = %d"


@dataclass(frozen=True)
class EnergyLevel:
    """
    A level of the oscillator, labelled by its quantum numbers (n2 is None in
    one dimension).
    """

    n1: int
    n2: Optional[int]
    value: float


def plane_wave_energy(k: Sequence[float], params: ModelParams) -> float:
    """Dispersion of the free particle, hbar^2 |k|^2 / 2m + alpha hbar^4 |k|^4 / m."""
    k = np.asarray(k, dtype=float)
    k2 = float(k @ k)
    m, hbar = params.m, params.hbar
    return hbar ** 2 * k2 / (2 * m) + params.alpha * hbar ** 4 * k2 ** 2 / m


def sho_energy_1d(n: int, params: ModelParams) -> EnergyLevel:
    """
    First-order level of the one-dimensional oscillator,
    hbar w (n + 1/2) + (3/4) alpha m hbar^2 w^2 (2n^2 + 2n + 1).
    """

    _check_quantum_numbers(n)
    m, hbar, w = params.m, params.hbar, params.omega
    value = hbar * w * (n + 0.5) + 0.75 * params.alpha * m * hbar ** 2 * w ** 2 * (
        2 * n ** 2 + 2 * n + 1
    )
    return EnergyLevel(n, None, value)


def sho_energy_2d(n1: int, n2: int, params: ModelParams) -> EnergyLevel:
    """
    First-order level of the isotropic two-dimensional oscillator,
    hbar w (n1 + n2 + 1) + (alpha m hbar^2 w^2 / 2)
    [3 (n1 + n2)^2 + 5 (n1 + n2) - 2 n1 n2 + 4].
    """

    _check_quantum_numbers(n1, n2)
    m, hbar, w = params.m, params.hbar, params.omega
    n = n1 + n2
    value = hbar * w * (n + 1) + params.alpha * m * hbar ** 2 * w ** 2 / 2 * (
        3 * n ** 2 + 5 * n - 2 * n1 * n2 + 4
    )
    return EnergyLevel(n1, n2, value)


def shell_states(shell: int) -> List[tuple]:
    """The quantum numbers (n1, n2) of the degenerate shell n1 + n2 = shell."""
    return [(n1, shell - n1) for n1 in range(shell, -1, -1)]


def formula_levels(params: ModelParams, levels: int) -> List[EnergyLevel]:
    """
    Lowest first-order levels in ascending order, labelled by their quantum
    numbers. Whole shells are generated before sorting, so that ties inside
    a shell keep a deterministic order.
    """

    if params.D == 1:
        return [sho_energy_1d(n, params) for n in range(levels)]
    if params.D != 2:
        raise DimensionError(__DIMENSION_ERROR % params.D)

    result, shell = [], 0
    while len(result) < levels:
        result.extend(sho_energy_2d(*s, params) for s in shell_states(shell))
        shell += 1
    result.sort(key=lambda level: (level.value, -level.n1))
    return result[:levels]


def _check_quantum_numbers(*numbers):
    if any(n < 0 or int(n) != n for n in numbers):
        raise DomainError(__QUANTUM_NUMBER_ERROR % (numbers,))
