import numpy as np
import pytest

from gupqm.model.errors import DimensionError, DomainError
from gupqm.model.kernels.propagator import PrefactorSpec
from gupqm.model.system.endpoints import Endpoints, TimeArg
from gupqm.model.system.parameters.ModelParams import ModelParams
from gupqm.model.verify.composition import associativity_check
from gupqm.model.verify.composition import composition_check_analytic
from gupqm.model.verify.composition import composition_check_quadrature
from test.model.utils import oscillator, random_endpoints

TIMES = [(TimeArg.real(1.5), 0.6), (TimeArg.imaginary(1.5), 0.6)]


@pytest.mark.parametrize('time, T1', TIMES)
def test_free_composition(time, T1):
    rng = np.random.default_rng(1)
    for D in (1, 2, 3):
        e = random_endpoints(rng, D, time)
        report = composition_check_analytic(ModelParams(D=D), e, T1)

        assert report.label == 'composition'
        assert report.relative < 1e-12


@pytest.mark.parametrize('time, T1', TIMES)
def test_first_order_composition(time, T1):
    rng = np.random.default_rng(2)
    for params in (oscillator(D=2), oscillator(D=3), ModelParams(D=2, alpha=1e-3)):
        for _ in range(5):
            e = random_endpoints(rng, params.D, time)
            assert composition_check_analytic(params, e, T1).relative < 1e-10


@pytest.mark.parametrize('index, delta', [(1, 0.5), (2, 1.0), (3, 0.5)])
def test_wrong_constants_break_composition(index, delta):
    params = oscillator(D=2, alpha=1e-2)
    e = Endpoints((0.4, -0.3), (0.8, 0.5), TimeArg.real(1.2))
    spec = PrefactorSpec.canonical(2).perturbed(index, delta)

    assert composition_check_analytic(params, e, 0.5, spec).relative > 1e-5


@pytest.mark.parametrize('params, index', [
    (ModelParams(D=2, alpha=1e-3), 1), (ModelParams(D=2, alpha=1e-3), 2),
    (oscillator(D=2), 1), (oscillator(D=2), 2), (oscillator(D=2), 3)
])
@pytest.mark.parametrize('delta', [-0.1, 0.1])
def test_small_shifts_break_composition(params, index, delta):
    e = Endpoints((0.4, -0.3), (0.8, 0.5), TimeArg.real(1.2))
    spec = PrefactorSpec.canonical(2).perturbed(index, delta)

    assert composition_check_analytic(params, e, 0.5, spec).relative > 1e-5


def test_positive_beta2_breaks_composition():
    params = oscillator(D=2, alpha=1e-2)
    e = Endpoints((0.4, -0.3), (0.8, 0.5), TimeArg.real(1.2))
    spec = PrefactorSpec(1.0, 0.5, 1.0)

    assert composition_check_analytic(params, e, 0.5, spec).relative > 1e-5


def test_quadrature_composition():
    e2 = Endpoints((0.2, -0.1), (0.5, 0.6), TimeArg.imaginary(1.0))
    e1 = Endpoints((0.3,), (-0.4,), TimeArg.imaginary(1.0))

    free = composition_check_quadrature(ModelParams(D=2), e2, 0.4)
    sho = composition_check_quadrature(oscillator(D=1), e1, 0.3)

    assert free.relative < 1e-10
    assert sho.relative < 1e-6
    assert sho.details['nodes'] == 64


def test_associativity():
    params = oscillator(D=2)
    e = Endpoints((0.1, 0.7), (-0.5, 0.2), TimeArg.real(1.5))
    report = associativity_check(params, e, 0.4, 0.5)

    assert report.relative < 1e-8
    assert report.details['left'] < 1e-8
    assert report.details['right'] < 1e-8


def test_quadrature_errors():
    e = Endpoints((0.0,), (1.0,), TimeArg.imaginary(1.0))
    with pytest.raises(DomainError):
        composition_check_quadrature(ModelParams(), e.with_time(TimeArg.real(1.0)), 0.5)
    with pytest.raises(DomainError):
        composition_check_quadrature(ModelParams(), e, 0.5, nodes=16)
    with pytest.raises(DimensionError):
        composition_check_quadrature(
            ModelParams(D=3), Endpoints((0, 0, 0), (1, 0, 0), e.time), 0.5
        )
