import math
import numpy as np
import pytest

from gupqm.model.classical.trajectory import eom_residual, eom_scaling
from gupqm.model.classical.trajectory import max_eom_residual, path_acceleration
from gupqm.model.classical.trajectory import path_eval
from gupqm.model.classical.trajectory import path_velocity, sho_trajectory_2d
from gupqm.model.errors import CausticError, DimensionError, DomainError
from gupqm.model.system.endpoints import Endpoints, TimeArg
from gupqm.model.system.parameters.ModelParams import ModelParams
from test.model.utils import oscillator, random_endpoints

QUARTER = TimeArg.real(math.pi / 2)
UNIT = Endpoints((1, 0), (0, 1), TimeArg.real(1.0))


def test_harmonic_path():
    path = sho_trajectory_2d(oscillator(alpha=0.0), Endpoints((1, 0), (0, 0), QUARTER))
    t = np.linspace(0, math.pi / 2, 9)

    expected = np.stack([np.cos(t), np.zeros_like(t)], axis=-1)
    assert np.allclose(path_eval(path, t), expected, atol=1e-12)


def test_quarter_turn():
    e = Endpoints((1, 0), (0, 1), QUARTER)
    path = sho_trajectory_2d(oscillator(alpha=0.0), e)

    half = math.sqrt(2) / 2
    assert np.allclose(path_eval(path, math.pi / 4), (half, half))


def test_path_hits_the_endpoints():
    rng = np.random.default_rng(21)
    for alpha in (0.0, 1e-3, 1e-2):
        e = random_endpoints(rng, 2, TimeArg.real(1.2))
        path = sho_trajectory_2d(oscillator(alpha=alpha, m=1.3), e)

        assert np.allclose(path_eval(path, 0.0), e.q0, atol=1e-12, rtol=0)
        assert np.allclose(path_eval(path, path.T), e.qf, atol=1e-12, rtol=0)


def test_velocity_matches_finite_differences():
    path = sho_trajectory_2d(oscillator(alpha=1e-2), UNIT)
    h = 1e-5
    t = 0.4

    numeric = (path_eval(path, t + h) - path_eval(path, t - h)) / (2 * h)
    assert np.allclose(path_velocity(path, t), numeric, atol=1e-8)

    numeric = (path_velocity(path, t + h) - path_velocity(path, t - h)) / (2 * h)
    assert np.allclose(path_acceleration(path, t), numeric, atol=1e-8)


def test_harmonic_acceleration():
    path = sho_trajectory_2d(ModelParams(omega=2.0, D=2), UNIT)
    t = np.linspace(0, 1, 9)

    assert np.allclose(path_acceleration(path, t), -4 * path_eval(path, t), atol=1e-12)


def test_harmonic_path_solves_the_equations():
    path = sho_trajectory_2d(oscillator(alpha=0.0), UNIT)
    t = np.linspace(0, 1, 33)

    assert np.abs(eom_residual(path, t)).max() < 1e-12


def test_first_order_residual():
    params = oscillator(alpha=1e-3)

    assert max_eom_residual(params, UNIT) <= 200 * params.alpha ** 2
    assert 3.6 <= eom_scaling(params, UNIT, 1e-3) <= 4.4


def test_trajectory_errors():
    with pytest.raises(DimensionError):
        sho_trajectory_2d(oscillator(D=1), Endpoints((0,), (1,)))
    with pytest.raises(DomainError):
        sho_trajectory_2d(ModelParams(D=2), UNIT)
    with pytest.raises(DomainError):
        sho_trajectory_2d(oscillator(), UNIT.with_time(TimeArg.imaginary(1.0)))
    with pytest.raises(CausticError):
        sho_trajectory_2d(oscillator(), UNIT.with_time(TimeArg.real(math.pi)))
    with pytest.raises(DomainError):
        path_eval(sho_trajectory_2d(oscillator(), UNIT), 1.5)
