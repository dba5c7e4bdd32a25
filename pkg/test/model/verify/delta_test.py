import math
import pytest

from gupqm.model.errors import DimensionError, DomainError
from gupqm.model.system.parameters.ModelParams import ModelParams
from gupqm.model.verify.delta import TestFunction, delta_limit_check
from gupqm.model.verify.delta import normalization_check
from test.model.utils import oscillator


def test_test_function():
    assert TestFunction((0.0,))((0.0,)) == pytest.approx(1 / math.sqrt(math.pi))
    assert TestFunction((1.0, 1.0), 2.0)((1.0, 1.0)) == pytest.approx(1 / (4 * math.pi))
    assert TestFunction((0.0, 0.0), None)((5.0, -3.0)) == 1.0


def test_free_delta_limit():
    report = delta_limit_check(ModelParams(), TestFunction((0.0,)), 1e-3)

    # the heat flow lowers the peak of g by tau / sqrt(pi) to first order
    assert report.label == 'delta-limit'
    assert report.residual_norm <= 1e-3
    assert report.residual_norm == pytest.approx(1e-3 / math.sqrt(math.pi), rel=1e-2)
    assert 1.7 <= report.scaling_ratio <= 2.3


@pytest.mark.parametrize('D', [1, 2, 3])
def test_first_order_delta_limit(D):
    params = oscillator(D=D, alpha=1e-3)
    center = tuple([0.3, -0.2, 0.1][:D])
    report = delta_limit_check(params, TestFunction(center), 1e-3)

    assert report.residual_norm <= 1e-3
    assert 1.7 <= report.scaling_ratio <= 2.3


def test_free_normalization():
    for D in (1, 2, 3):
        report = normalization_check(ModelParams(D=D, alpha=1e-3), (0.2,) * D, 0.5)

        assert report.label == 'normalization'
        assert report.residual_norm < 1e-9


def test_oscillator_normalization_is_linear():
    report = normalization_check(oscillator(D=1, alpha=0.0), (0.5,), 1e-3)

    assert report.residual_norm > 0
    assert 1.7 <= report.scaling_ratio <= 2.3


def test_delta_errors():
    with pytest.raises(DomainError):
        delta_limit_check(ModelParams(), TestFunction((0.0,)), 0.0)
    with pytest.raises(DimensionError):
        delta_limit_check(ModelParams(), TestFunction((0.0, 0.0)), 1e-3)
    with pytest.raises(DimensionError):
        delta_limit_check(ModelParams(), TestFunction((0.0,)), 1e-3, qf=(0.0, 1.0))
    with pytest.raises(DomainError):
        TestFunction((0.0,), 0.0)
