import numpy as np

from gupqm.model.errors import DimensionError, DomainError
from gupqm.model.moments.gaussian import GaussianWeight
from gupqm.model.moments.polynomial import MultiPoly
from typing import Callable, Tuple

MIN_NODES = 4
MAX_DIMENSION = 3

__OSCILLATORY_ERROR = "Quadrature requires Re(a) > 0, found a = %s"
__NODES_ERROR = "Quadrature requires at least %d nodes, found %d"
__DIMENSION_ERROR = "Tensor quadrature is limited to D <= %d, found D = %d"
__MISMATCH_ERROR = "Polynomial of dimension %d against a weight of dimension %d"


def tensor_grid(nodes: int, D: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Tensor-product Gauss-Hermite rule for the weight exp(-|x|^2) on R^D.

    Parameters
    ----------
    nodes: int
        Number of nodes per axis
    D: int
        Dimension of the grid
    Returns
    -------
    points: np.ndarray
        Array of shape (nodes^D, D)
    weights: np.ndarray
        Array of shape (nodes^D,)
    """

    knots, weights = np.polynomial.hermite.hermgauss(nodes)
    mesh = np.meshgrid(*([knots] * D), indexing='ij')
    points = np.stack([axis.ravel() for axis in mesh], axis=-1)
    mesh = np.meshgrid(*([weights] * D), indexing='ij')
    return points, np.prod(np.stack([w.ravel() for w in mesh]), axis=0)


def gaussian_quadrature(
        integrand: Callable[[np.ndarray], np.ndarray],
        w: GaussianWeight,
        nodes: int
) -> complex:
    """
    Estimate the integral of integrand(q) exp(-a |q|^2 + 2 b.q) recentring
    the Hermite rule at the stationary point of the real part of the
    exponent, Re(b)/Re(a), with scale 1/sqrt(Re a).

    Parameters
    ----------
    integrand: Callable[[np.ndarray], np.ndarray]
        Vectorised function of points of shape (n, D)
    w: GaussianWeight
        The Gaussian weight, with Re(a) > 0
    nodes: int
        Number of nodes per axis
    Returns
    -------
    The quadrature estimate.
    """

    _check_domain(w, nodes)

    re_a, im_a = w.a.real, w.a.imag
    b = np.asarray(w.b)
    center = b.real / re_a
    scale = 1 / np.sqrt(re_a)

    x, weights = tensor_grid(nodes, w.D)
    q = center + scale * x

    # the real part of the exponent is -|x|^2 + Re(a)|center|^2, the former
    # being the Hermite weight itself
    phase = -1j * im_a * np.sum(q * q, axis=-1) + 2j * (q @ b.imag)
    values = integrand(q) * np.exp(phase)

    return complex(
        scale ** w.D * np.exp(re_a * (center @ center)) * np.sum(weights * values)
    )


def quadrature_oracle(p: MultiPoly, w: GaussianWeight, nodes: int) -> complex:
    """
    Independent numerical estimate of the integral of p(q) against the weight
    w, through tensor Gauss-Hermite quadrature. Purely oscillatory weights
    are refused.

    Parameters
    ----------
    p: MultiPoly
        The polynomial to integrate
    w: GaussianWeight
        The Gaussian weight, with Re(a) > 0
    nodes: int
        Number of nodes per axis, at least four
    Returns
    -------
    The quadrature estimate.
    """

    if p.D != w.D:
        raise DimensionError(__MISMATCH_ERROR % (p.D, w.D))
    return gaussian_quadrature(p.evaluate, w, nodes)


def _check_domain(w: GaussianWeight, nodes: int):
    if w.a.real <= 0:
        raise DomainError(__OSCILLATORY_ERROR % w.a)
    if nodes < MIN_NODES:
        raise DomainError(__NODES_ERROR % (MIN_NODES, nodes))
    if w.D > MAX_DIMENSION:
        raise DimensionError(__DIMENSION_ERROR % (MAX_DIMENSION, w.D))
