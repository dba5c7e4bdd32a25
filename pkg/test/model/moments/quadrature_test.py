import itertools
import math
import numpy as np
import pytest

from gupqm.model.errors import DimensionError, DomainError
from gupqm.model.moments.gaussian import GaussianWeight, integrate_poly_gaussian
from gupqm.model.moments.polynomial import MultiPoly
from gupqm.model.moments.quadrature import quadrature_oracle, tensor_grid
from test.model.utils import relative

NODES = {1: 32, 2: 32, 3: 20}


def random_poly(rng: np.random.Generator, D: int, degree: int) -> MultiPoly:
    terms = {
        exponent: complex(*rng.normal(size=2))
        for exponent in itertools.product(range(degree + 1), repeat=D)
        if sum(exponent) <= degree
    }
    return MultiPoly(D, terms)


def mild_weight(rng: np.random.Generator, D: int) -> GaussianWeight:
    re_a = rng.uniform(0.8, 1.5)
    a = complex(re_a, rng.uniform(-0.2, 0.2) * re_a)
    b = rng.uniform(-0.5, 0.5, D) + 1j * rng.uniform(-0.5, 0.5, D)
    return GaussianWeight(a, tuple(b))


def test_tensor_grid():
    points, weights = tensor_grid(5, 2)

    assert points.shape == (25, 2)
    assert weights.shape == (25,)
    assert weights.sum() == pytest.approx(math.pi)


def test_known_integrals():
    one = quadrature_oracle(MultiPoly.constant(2, 1), GaussianWeight(1, (0, 0)), 8)
    square = quadrature_oracle(MultiPoly.norm_squared(1), GaussianWeight(1, (0,)), 8)

    assert abs(one - math.pi) < 1e-12
    assert abs(square - math.sqrt(math.pi) / 2) < 1e-12


def test_node_doubling_is_stable():
    rng = np.random.default_rng(11)
    for D in (1, 2):
        w = mild_weight(rng, D)
        p = random_poly(rng, D, 4)
        coarse = quadrature_oracle(p, w, 32)
        fine = quadrature_oracle(p, w, 64)
        assert relative(coarse, fine) < 1e-12


@pytest.mark.parametrize('D', [1, 2, 3])
def test_quadrature_matches_engine(D):
    rng = np.random.default_rng(100 + D)
    for _ in range(5):
        w = mild_weight(rng, D)
        p = random_poly(rng, D, 4)
        estimate = quadrature_oracle(p, w, NODES[D])
        assert relative(estimate, integrate_poly_gaussian(p, w)) < 1e-10


def test_quadrature_errors():
    with pytest.raises(DomainError):
        quadrature_oracle(MultiPoly.constant(1, 1), GaussianWeight(1j, (0,)), 8)
    with pytest.raises(DomainError):
        quadrature_oracle(MultiPoly.constant(1, 1), GaussianWeight(1, (0,)), 3)
    with pytest.raises(DimensionError):
        quadrature_oracle(MultiPoly.constant(4, 1), GaussianWeight.centered(1, 4), 8)
    with pytest.raises(DimensionError):
        quadrature_oracle(MultiPoly.constant(2, 1), GaussianWeight(1, (0,)), 8)
