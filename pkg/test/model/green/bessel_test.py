import math
import numpy as np
import pytest
import scipy.special

from gupqm.model.errors import DomainError
from gupqm.model.green.bessel import ASYMPTOTIC_LIMIT, SERIES_LIMIT, bessel_k

VALUES = [
    (0, 1.0, 0.4210244382),
    (1, 1.0, 0.6019072302),
]


@pytest.mark.parametrize('nu, z, expected', VALUES)
def test_known_values(nu, z, expected):
    assert bessel_k(nu, z) == pytest.approx(expected, rel=1e-9)


def test_against_scipy():
    for z in np.geomspace(0.1, 20.0, 50):
        assert bessel_k(0, z) == pytest.approx(scipy.special.k0(z), rel=1e-10)
        assert bessel_k(1, z) == pytest.approx(scipy.special.k1(z), rel=1e-10)


def test_all_branches_against_scipy():
    # one point per representation, on both sides of every crossover
    for z in (1e-3, SERIES_LIMIT, 2.5, 19.5, ASYMPTOTIC_LIMIT, 30.0):
        assert bessel_k(0, z) == pytest.approx(scipy.special.k0(z), rel=1e-10)
        assert bessel_k(1, z) == pytest.approx(scipy.special.k1(z), rel=1e-10)


def test_leading_asymptotics():
    z = 20.0
    ratio = bessel_k(0, z) * math.sqrt(2 * z / math.pi) * math.exp(z)
    assert abs(ratio - 1) < 0.02


def test_derivative_identity():
    h = 1e-5
    for z in (0.5, 1.5, 5.0, 12.0, 25.0):
        derivative = (bessel_k(0, z + h) - bessel_k(0, z - h)) / (2 * h)
        assert derivative == pytest.approx(-bessel_k(1, z), rel=1e-6)


def test_bessel_errors():
    with pytest.raises(DomainError):
        bessel_k(2, 1.0)
    with pytest.raises(DomainError):
        bessel_k(0, 0.0)
    with pytest.raises(DomainError):
        bessel_k(1, -1.0)
