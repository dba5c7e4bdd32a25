import pytest

from gupqm.model.errors import DomainError
from gupqm.model.system.endpoints import Endpoints, TimeArg
from gupqm.model.system.parameters.ModelParams import ModelParams
from gupqm.model.verify.action_shift import delta_S, delta_S_moments
from gupqm.model.verify.report import CompositionSplit
from test.model.utils import oscillator, relative

SPLITS = [
    CompositionSplit.of(Endpoints((0.3, -0.5), (0.9, 0.2), TimeArg.real(1.4)), 0.6),
    CompositionSplit.of(Endpoints((0.0, 0.0), (0.0, 0.0), TimeArg.real(0.8)), 0.3),
    CompositionSplit.of(Endpoints((1.0, 0.4), (-0.2, 0.1), TimeArg.imaginary(1.0)), 0.7),
]


@pytest.mark.parametrize('split', SPLITS)
def test_shift_matches_moments(split):
    params = oscillator(D=2, m=1.2)
    assert relative(delta_S(params, split), delta_S_moments(params, split)) < 1e-9


@pytest.mark.parametrize('split', SPLITS)
def test_shift_is_mirror_symmetric(split):
    params = oscillator(D=2)
    mirrored = delta_S(params, split.swapped())

    assert relative(mirrored, delta_S(params, split)) < 1e-10


def test_split_times():
    split = CompositionSplit.of(Endpoints((0,), (1,), TimeArg.imaginary(2.0)), 0.5)

    assert split.T1 == TimeArg.imaginary(0.5)
    assert split.T2 == TimeArg.imaginary(1.5)
    assert split.swapped().T1 == split.T2


def test_shift_errors():
    with pytest.raises(DomainError):
        delta_S(ModelParams(D=2), SPLITS[0])
    with pytest.raises(DomainError):
        CompositionSplit(TimeArg.real(1.0), TimeArg.imaginary(1.0), SPLITS[0].endpoints)
