import numpy as np
import os

from dataclasses import dataclass, field, fields, replace
from gupqm.model.errors import DimensionError, GUPError, ParameterError
from gupqm.model.kernels.propagator import PrefactorSpec
from gupqm.model.system.endpoints import Endpoints, TimeArg, Vector
from gupqm.model.system.parameters import factory
from gupqm.model.system.parameters.ModelParams import ModelParams
from gupqm.model.verify.suites import Tolerances
from typing import Dict, List, Mapping, Optional

SEED_VARIABLE = 'GUPQM_SEED'
FORMATS = ('json', 'csv')
SYSTEMS = ('free', 'sho')

# configuration keys holding model parameters, by their field name
PARAMETER_KEYS = {'mass': 'm', 'hbar': 'hbar', 'omega': 'omega',
                  'alpha': 'alpha', 'dim': 'D'}
TOLERANCE_PREFIX = 'tolerance.'
KEYS = (
    'target', 'system', *PARAMETER_KEYS, 'q0', 'qf', 'time', 'euclidean',
    'epsilon', 'levels', 'basis', 'shell', 'dp_min', 'dp_max', 'samples',
    'beta1', 'beta2', 'beta3', 'sweep', 'format', 'out', 'seed', 'trials',
    'jobs', 'progress'
)
# quantities a sweep may vary besides the model parameters
SWEEP_TARGETS = ('time', 'epsilon')

__UNKNOWN_KEY_ERROR = "Unknown configuration key '%s'"
__VALUE_ERROR = "Invalid value for '%s': %s"
__SWEEP_SYNTAX_ERROR = "Sweep '%s' is not of the form name:start:stop:count[:log]"
__SWEEP_ERROR = "Invalid sweep of '%s': %s"
__DIMENSION_ERROR = "Option dim = %d disagrees with q0 of dimension %d"
__SYSTEM_ERROR = "The %s system cannot have omega = %s"


@dataclass(frozen=True)
class Sweep:
    """
    Sampling of one quantity: count values from start to stop, evenly
    spaced or (log) geometrically spaced.
    """

    name: str
    start: float
    stop: float
    count: int
    log: bool = False

    def __post_init__(self):
        targets = (*PARAMETER_KEYS, *PARAMETER_KEYS.values(), *SWEEP_TARGETS)
        if self.name not in targets:
            raise ParameterError(_sweep_message(self.name, 'unknown quantity'))
        if self.count < 1:
            raise ParameterError(_sweep_message(self.name, 'count below 1'))
        if self.log and min(self.start, self.stop) <= 0:
            raise ParameterError(_sweep_message(self.name, 'log of non positive'))

    @staticmethod
    def parse(text: str) -> 'Sweep':
        parts = text.split(':')
        if len(parts) not in (4, 5) or (len(parts) == 5 and parts[4] != 'log'):
            raise ParameterError(_syntax_message(text))
        try:
            start, stop, count = float(parts[1]), float(parts[2]), int(parts[3])
        except ValueError:
            raise ParameterError(_syntax_message(text))
        return Sweep(parts[0], start, stop, count, len(parts) == 5)

    @property
    def quantity(self) -> str:
        """Name of the swept quantity on the configuration."""
        return PARAMETER_KEYS.get(self.name, self.name)

    def values(self) -> List[float]:
        space = np.geomspace if self.log else np.linspace
        return [float(v) for v in space(self.start, self.stop, self.count)]


@dataclass(frozen=True)
class RunConfig:
    """
    Complete description of a command line run.

    command: str
        One of kernel, action, spectrum, green, bound, verify
    target: str
        Suite of the verify command
    params: ModelParams
        Physical parameters
    q0, qf: Vector
        Endpoints of kernels, actions and Green's functions
    time: float
        Real time T, or tau when euclidean
    epsilon: float
        Energy parameter of the Green's function
    levels, basis, shell: int
        Spectrum options; a shell selects the degenerate shell report
    dp_min, dp_max, samples:
        Momentum grid of the uncertainty bound
    spec: PrefactorSpec
        Prefactor constants, canonical if absent
    sweep: Sweep
        Optional sweep of a parameter
    format, out: str
        Output format and path (stdout if absent)
    seed, trials, jobs: int
        Randomized verification settings and worker threads
    tolerances: Tolerances
        Thresholds of the verification suites
    """

    command: str
    target: Optional[str] = None
    params: ModelParams = field(default_factory=ModelParams)
    q0: Vector = (0.0,)
    qf: Vector = (0.0,)
    time: float = 1.0
    euclidean: bool = False
    epsilon: float = 1.0
    levels: int = 6
    basis: int = 32
    shell: Optional[int] = None
    dp_min: float = 0.2
    dp_max: float = 2.0
    samples: int = 50
    spec: Optional[PrefactorSpec] = None
    sweep: Optional[Sweep] = None
    format: str = 'json'
    out: Optional[str] = None
    seed: int = 0
    trials: int = 20
    jobs: int = 1
    progress: bool = False
    tolerances: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ParameterError(_value_message('format', self.format))
        if self.jobs < 1 or self.trials < 1 or self.samples < 1:
            raise ParameterError(_value_message(
                'jobs/trials/samples', (self.jobs, self.trials, self.samples)
            ))

    @property
    def endpoints(self) -> Endpoints:
        time = TimeArg.imaginary(self.time) if self.euclidean \
            else TimeArg.real(self.time)
        return Endpoints(self.q0, self.qf, time)

    def swept(self, value: float) -> 'RunConfig':
        """The configuration at one value of its sweep."""
        name = self.sweep.quantity
        if name in SWEEP_TARGETS:
            return replace(self, **{name: value})
        value = int(value) if name == 'D' else value
        return replace(self, params=self.params.replace(**{name: value}))


def vector(text: str) -> Vector:
    """Parse a comma separated vector."""
    try:
        return tuple(float(v) for v in text.split(','))
    except ValueError:
        raise ParameterError(_value_message('vector', text))


def from_settings(
        command: str,
        settings: Mapping[str, str],
        environment: Optional[Mapping[str, str]] = None
) -> RunConfig:
    """
    Build the run configuration from string settings, as read from the
    configuration file and the command line flags.

    Parameters
    ----------
    command: str
        The subcommand
    settings: Mapping[str, str]
        The settings, keyed as the configuration file keys
    environment: Mapping[str, str]
        Environment variables, os.environ if not given
    Returns
    -------
    The validated configuration.
    """

    environment = os.environ if environment is None else environment
    settings = dict(settings)
    tolerances = {
        key[len(TOLERANCE_PREFIX):]: settings.pop(key)
        for key in list(settings) if key.startswith(TOLERANCE_PREFIX)
    }
    for key in settings:
        if key not in KEYS:
            raise ParameterError(__UNKNOWN_KEY_ERROR % key)

    names = {f.name for f in fields(Tolerances)}
    for name in tolerances:
        if name not in names:
            raise ParameterError(__UNKNOWN_KEY_ERROR % (TOLERANCE_PREFIX + name))

    try:
        return _build(command, settings, tolerances, environment)
    except GUPError:
        raise
    except ValueError as error:
        raise ParameterError(_value_message(command, error))


def from_file(
        command: str,
        path: Optional[str],
        flags: Mapping[str, Optional[str]]
) -> RunConfig:
    """
    Configuration from a key=value file overridden by the given flags; flags
    set to None are ignored.
    """

    settings: Dict[str, str] = factory.read_pairs(path) if path else dict()
    settings.update({k: v for k, v in flags.items() if v is not None})
    return from_settings(command, settings)


def _build(command, settings, tolerances, environment) -> RunConfig:
    q0 = vector(settings['q0']) if 'q0' in settings else None
    qf = vector(settings['qf']) if 'qf' in settings else None

    values = {
        PARAMETER_KEYS[key]: settings[key]
        for key in PARAMETER_KEYS if key in settings
    }
    if q0 is not None:
        if 'D' in values and int(values['D']) != len(q0):
            raise DimensionError(__DIMENSION_ERROR % (int(values['D']), len(q0)))
        values['D'] = len(q0)
    params = _system(settings.get('system'), factory.from_dict(values))

    D = params.D
    options = dict(
        command=command, params=params,
        q0=q0 or (0.0,) * D, qf=qf or (0.0,) * D,
        seed=int(settings.get('seed', environment.get(SEED_VARIABLE, 0))),
        tolerances=Tolerances(**{k: float(v) for k, v in tolerances.items()})
    )
    for key, kind in (('time', float), ('epsilon', float), ('levels', int),
                      ('basis', int), ('shell', int), ('dp_min', float),
                      ('dp_max', float), ('samples', int), ('trials', int),
                      ('jobs', int), ('format', str), ('out', str),
                      ('target', str)):
        if key in settings:
            options[key] = kind(settings[key])
    for key in ('euclidean', 'progress'):
        if key in settings:
            options[key] = _flag(key, settings[key])
    if 'sweep' in settings:
        options['sweep'] = Sweep.parse(settings['sweep'])

    betas = {k: float(settings[k]) for k in ('beta1', 'beta2', 'beta3')
             if k in settings}
    if betas:
        options['spec'] = replace(PrefactorSpec.canonical(D), **betas)
    return RunConfig(**options)


def _system(system: Optional[str], params: ModelParams) -> ModelParams:
    if system is None:
        return params
    if system not in SYSTEMS:
        raise ParameterError(_value_message('system', system))
    if system == 'free' and not params.free:
        raise ParameterError(__SYSTEM_ERROR % (system, params.omega))
    if system == 'sho' and params.free:
        # unit frequency unless given
        return params.replace(omega=1.0)
    return params


def _flag(key: str, text: str) -> bool:
    lowered = str(text).lower()
    if lowered in ('1', 'true', 'yes', 'on'):
        return True
    if lowered in ('0', 'false', 'no', 'off'):
        return False
    raise ParameterError(_value_message(key, text))


def _value_message(key, value) -> str:
    return __VALUE_ERROR % (key, value)


def _sweep_message(name, reason) -> str:
    return __SWEEP_ERROR % (name, reason)


def _syntax_message(text) -> str:
    return __SWEEP_SYNTAX_ERROR % text
