import pytest

from gupqm.controller.config import RunConfig, Sweep, from_file, from_settings
from gupqm.controller.config import vector
from gupqm.model.errors import DimensionError, ParameterError
from gupqm.model.kernels.propagator import PrefactorSpec
from gupqm.model.system.endpoints import TimeArg
from gupqm.model.system.parameters.ModelParams import ModelParams

NO_ENVIRONMENT = dict()

SWEEPS = [
    ('time:1:2:3', Sweep('time', 1.0, 2.0, 3), [1.0, 1.5, 2.0]),
    ('alpha:1e-4:1e-2:3:log', Sweep('alpha', 1e-4, 1e-2, 3, True),
     [1e-4, 1e-3, 1e-2]),
    ('dim:1:3:3', Sweep('dim', 1.0, 3.0, 3), [1.0, 2.0, 3.0]),
]

BAD_SWEEPS = ['time:1:2', 'time:1:2:3:lin', 'time:a:2:3', 'time:1:2:1.5',
              'colour:1:2:3', 'time:1:2:0', 'alpha:0:1:3:log']


def test_settings():
    config = from_settings('kernel', {
        'q0': '0,0', 'qf': '1,0', 'omega': '1', 'alpha': '1e-3',
        'time': '0.5', 'euclidean': 'yes'
    }, NO_ENVIRONMENT)

    assert config.command == 'kernel'
    assert config.params == ModelParams(omega=1.0, alpha=1e-3, D=2)
    assert config.q0 == (0.0, 0.0)
    assert config.qf == (1.0, 0.0)
    assert config.endpoints.time == TimeArg.imaginary(0.5)
    assert config.spec is None
    assert config.seed == 0


def test_defaults_follow_the_dimension():
    config = from_settings('action', {'dim': '3'}, NO_ENVIRONMENT)

    assert config.params.D == 3
    assert config.q0 == (0.0, 0.0, 0.0)
    assert config.qf == (0.0, 0.0, 0.0)
    assert config.endpoints.time == TimeArg.real(1.0)


def test_dimension_disagreement():
    with pytest.raises(DimensionError):
        from_settings('kernel', {'dim': '3', 'q0': '0,0'}, NO_ENVIRONMENT)


@pytest.mark.parametrize('settings', [
    {'colour': 'blue'},
    {'tolerance.nothing': '1'},
    {'time': 'soon'},
    {'euclidean': 'maybe'},
    {'q0': '0,x'},
    {'format': 'xml'},
    {'jobs': '0'},
    {'system': 'rotor'},
    {'system': 'free', 'omega': '2'},
    {'mass': '-1'},
])
def test_invalid_settings(settings):
    with pytest.raises(ParameterError):
        from_settings('kernel', settings, NO_ENVIRONMENT)


def test_seed_from_the_environment():
    environment = {'GUPQM_SEED': '42'}

    assert from_settings('verify', {}, environment).seed == 42
    assert from_settings('verify', {'seed': '7'}, environment).seed == 7


def test_systems():
    sho = from_settings('spectrum', {'system': 'sho'}, NO_ENVIRONMENT)
    faster = from_settings('spectrum', {'system': 'sho', 'omega': '2'}, NO_ENVIRONMENT)
    free = from_settings('kernel', {'system': 'free'}, NO_ENVIRONMENT)

    assert sho.params.omega == 1.0
    assert faster.params.omega == 2.0
    assert free.params.free


@pytest.mark.parametrize('text, value', [
    ('1', True), ('True', True), ('on', True), ('0', False), ('no', False),
    ('OFF', False)
])
def test_flags(text, value):
    assert from_settings('verify', {'progress': text}, NO_ENVIRONMENT).progress is value


def test_tolerances():
    config = from_settings(
        'verify', {'tolerance.composition': '1e-30', 'target': 'composition'},
        NO_ENVIRONMENT
    )

    assert config.tolerances.composition == 1e-30
    assert config.target == 'composition'


def test_prefactor_constants():
    config = from_settings('kernel', {'dim': '2', 'beta2': '0.5'}, NO_ENVIRONMENT)

    assert config.spec == PrefactorSpec(1.0, 0.5, 1.0)
    assert config.spec == PrefactorSpec.canonical(2).perturbed(2, 1.0)


def test_vector():
    assert vector('1, -2.5,3') == (1.0, -2.5, 3.0)
    with pytest.raises(ParameterError):
        vector('1,,2')


@pytest.mark.parametrize('text, sweep, values', SWEEPS)
def test_sweep(text, sweep, values):
    assert Sweep.parse(text) == sweep
    assert sweep.values() == pytest.approx(values)


@pytest.mark.parametrize('text', BAD_SWEEPS)
def test_invalid_sweep(text):
    with pytest.raises(ParameterError):
        Sweep.parse(text)


def test_swept_configuration():
    config = RunConfig('kernel', params=ModelParams(D=2), q0=(0, 0), qf=(1, 0))

    assert Sweep('mass', 1, 2, 2).quantity == 'm'
    assert Sweep('m', 1, 2, 2).quantity == 'm'
    assert replace_sweep(config, 'time:1:2:2').swept(2.0).time == 2.0
    assert replace_sweep(config, 'mass:1:2:2').swept(2.0).params.m == 2.0
    assert replace_sweep(config, 'epsilon:1:2:2').swept(0.3).epsilon == 0.3

    dimension = replace_sweep(config, 'dim:1:3:3').swept(3.0)
    assert dimension.params.D == 3
    assert isinstance(dimension.params.D, int)


def replace_sweep(config: RunConfig, text: str) -> RunConfig:
    return RunConfig(
        config.command, params=config.params, q0=config.q0, qf=config.qf,
        sweep=Sweep.parse(text)
    )


def test_from_file(tmp_path, monkeypatch):
    monkeypatch.delenv('GUPQM_SEED', raising=False)
    path = tmp_path / 'run.cfg'
    path.write_text(
        '# oscillator\n'
        'system = sho\n'
        'alpha = 1e-3\n'
        '\n'
        'q0 = 0.1,0.2\n'
        'time = 2\n'
        'tolerance.moment = 1e-9\n'
    )

    config = from_file('kernel', str(path), {'time': '0.5', 'format': None})

    assert config.params == ModelParams(omega=1.0, alpha=1e-3, D=2)
    assert config.q0 == (0.1, 0.2)
    assert config.time == 0.5
    assert config.format == 'json'
    assert config.tolerances.moment == 1e-9


def test_malformed_file(tmp_path):
    path = tmp_path / 'run.cfg'
    path.write_text('alpha 1e-3\n')

    with pytest.raises(ParameterError):
        from_file('kernel', str(path), {})
