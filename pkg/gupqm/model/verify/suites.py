import more_itertools
import numpy as np

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from functools import partial
from gupqm.logger import logger
from gupqm.model.classical.trajectory import eom_scaling, max_eom_residual
from gupqm.model.errors import DomainError
from gupqm.model.kernels.propagator import PrefactorSpec
from gupqm.model.moments.gaussian import GaussianWeight, MomentKind
from gupqm.model.moments.gaussian import closed_moment, integrate_poly_gaussian
from gupqm.model.moments.quadrature import quadrature_oracle
from gupqm.model.system.endpoints import Endpoints, TimeArg
from gupqm.model.system.parameters.ModelParams import ModelParams
from gupqm.model.verify.composition import composition_check_analytic
from gupqm.model.verify.delta import TestFunction, delta_limit_check
from gupqm.model.verify.delta import normalization_check
from gupqm.model.verify.report import ResidualReport
from gupqm.model.verify.schrodinger import schrodinger_residual
from typing import Callable, Dict, List, Optional

# closed moment formulas against the Isserlis engine: both exact, rounding only
MOMENT_TOLERANCE = 1e-12
# closed formulas against Gauss-Hermite, 32 nodes per axis, |Im a| <= Re a / 4
QUADRATURE_TOLERANCE = 1e-10
QUADRATURE_NODES = 32
# composition with the canonical constants leaves a rounding residual
COMPOSITION_TOLERANCE = 1e-10
# a perturbed constant must leave a residual of order alpha, far above rounding
NEGATIVE_CONTROL_FACTOR = 1e3
NEGATIVE_CONTROL_FLOOR = 1e-13
NEGATIVE_CONTROL_SHIFT = 0.1
# Schrodinger residual at alpha = 1e-3 and its alpha^2 scaling
SCHRODINGER_TOLERANCE = 1e-4
SCALING_RANGE = (3.6, 4.4)
# the alpha^2 residual grows with the momentum and with 1/sin(wT): Schrodinger
# draws keep the endpoints in the half box and wT below 2
SCHRODINGER_BOX = 0.5
SCHRODINGER_TIMES = (1.2, 2.0)
# delta limit at tau = 1e-3, deviation halving within 15%
DELTA_TAU = 1e-3
DELTA_TOLERANCE = 1e-3
SLOPE_RANGE = (1.7, 2.3)

# alpha used by the scaling suites when the parameters do not set one
DEFAULT_ALPHA = 1e-3
DEFAULT_OMEGA = 1.0

__SUITE_ERROR = "Unknown suite '%s', available: %s"


@dataclass(frozen=True)
class Tolerances:
    """Thresholds of the suites, overridable from the command line."""

    moment: float = MOMENT_TOLERANCE
    quadrature: float = QUADRATURE_TOLERANCE
    composition: float = COMPOSITION_TOLERANCE
    schrodinger: float = SCHRODINGER_TOLERANCE
    delta: float = DELTA_TOLERANCE


Trial = Callable[
    [np.random.Generator, ModelParams, bool, Tolerances], List[ResidualReport]
]


def _point(rng: np.random.Generator, D: int, bound: float = 1.0):
    return tuple(rng.uniform(-bound, bound, D))


def _time(value: float, euclidean: bool) -> TimeArg:
    return TimeArg.imaginary(value) if euclidean else TimeArg.real(value)


def _in_range(value: Optional[float], bounds) -> bool:
    return value is not None and bounds[0] <= value <= bounds[1]


def _horizon(params: ModelParams) -> float:
    # real-time oscillator draws stay below the first caustic, omega T < pi
    if params.free:
        return 1.0
    return min(1.0, 1.0 / params.omega)


def moments_trial(
        rng: np.random.Generator,
        params: ModelParams,
        euclidean: bool,
        tolerances: Tolerances
) -> List[ResidualReport]:
    """Every closed moment on a random weight, against engine and quadrature."""
    D = int(rng.integers(1, 4))
    re_a = rng.uniform(0.5, 2.0)
    a = complex(re_a, rng.uniform(-0.25, 0.25) * re_a)
    b = rng.uniform(-1, 1, D) + 1j * rng.uniform(-1, 1, D)
    x = rng.uniform(-1, 1, D) + 1j * rng.uniform(-1, 1, D)
    w = GaussianWeight(a, tuple(b))

    reports = []
    for kind in MomentKind:
        direction = tuple(x) if kind.requires_x else None
        p = kind.polynomial(D, direction)
        closed = closed_moment(kind, w, direction)
        engine = integrate_poly_gaussian(p, w)
        oracle = quadrature_oracle(p, w, QUADRATURE_NODES)

        reports.append(ResidualReport(
            label=f'moment-{kind.value}',
            residual_norm=abs(closed - engine),
            reference_norm=abs(closed),
            alpha_used=0.0,
            details={'D': float(D)}
        ).judged(tolerances.moment))
        reports.append(ResidualReport(
            label=f'moment-{kind.value}-quadrature',
            residual_norm=abs(closed - oracle),
            reference_norm=abs(closed),
            alpha_used=0.0,
            details={'D': float(D)}
        ).judged(tolerances.quadrature))
    return reports


def composition_trial(
        rng: np.random.Generator,
        params: ModelParams,
        euclidean: bool,
        tolerances: Tolerances
) -> List[ResidualReport]:
    """
    Composition with the canonical constants, then with each constant of the
    prefactor moved away from it as a negative control.
    """

    T = rng.uniform(0.5, 2.5) * _horizon(params)
    T1 = rng.uniform(0.25, 0.75) * T
    e = Endpoints(
        _point(rng, params.D), _point(rng, params.D), _time(T, euclidean)
    )

    canonical = composition_check_analytic(params, e, T1)
    reports = [canonical.judged(tolerances.composition)]

    rounding = max(canonical.relative, NEGATIVE_CONTROL_FLOOR)
    floor = max(NEGATIVE_CONTROL_FACTOR * rounding, 1e-2 * params.alpha)
    # beta3 enters the oscillator prefactor only
    indices = (1, 2) if params.free else (1, 2, 3)
    spec = PrefactorSpec.canonical(params.D)
    for index in indices:
        perturbed = spec.perturbed(index, NEGATIVE_CONTROL_SHIFT)
        report = composition_check_analytic(params, e, T1, perturbed)
        reports.append(replace(
            report.judged(floor, report.relative >= floor),
            label=f'composition-beta{index}'
        ))
    return reports


def schrodinger_trial(
        rng: np.random.Generator,
        params: ModelParams,
        euclidean: bool,
        tolerances: Tolerances
) -> List[ResidualReport]:
    """Schrodinger residual at a random point, with its alpha^2 scaling."""
    T = rng.uniform(1.5, 3.0) if params.free \
        else rng.uniform(*SCHRODINGER_TIMES) * _horizon(params)
    e = Endpoints(
        _point(rng, params.D, SCHRODINGER_BOX),
        _point(rng, params.D, SCHRODINGER_BOX),
        _time(T, euclidean)
    )
    report = schrodinger_residual(params, e)
    passed = (
        report.relative <= tolerances.schrodinger
        and _in_range(report.scaling_ratio, SCALING_RANGE)
    )
    return [report.judged(tolerances.schrodinger, passed)]


def delta_trial(
        rng: np.random.Generator,
        params: ModelParams,
        euclidean: bool,
        tolerances: Tolerances
) -> List[ResidualReport]:
    """Delta limit of a unit width Gaussian and normalization of the kernel."""
    center = _point(rng, params.D, 0.5)
    report = delta_limit_check(params, TestFunction(center, 1.0), DELTA_TAU)
    passed = (
        report.residual_norm <= tolerances.delta
        and _in_range(report.scaling_ratio, SLOPE_RANGE)
    )
    normalization = normalization_check(params, center, DELTA_TAU)
    return [
        report.judged(tolerances.delta, passed),
        normalization.judged(
            tolerances.delta, normalization.residual_norm <= tolerances.delta
        )
    ]


def eom_trial(
        rng: np.random.Generator,
        params: ModelParams,
        euclidean: bool,
        tolerances: Tolerances
) -> List[ResidualReport]:
    """alpha^2 scaling of the equations of motion along the planar path."""
    params = params.replace(D=2)
    if params.free:
        params = params.replace(omega=DEFAULT_OMEGA)

    time = TimeArg.real(rng.uniform(0.5, 2.5) * _horizon(params))
    e = Endpoints(_point(rng, 2), _point(rng, 2), time)
    ratio = eom_scaling(params, e, params.alpha)
    report = ResidualReport(
        label='eom',
        residual_norm=max_eom_residual(params, e),
        reference_norm=1.0,
        alpha_used=params.alpha,
        scaling_ratio=ratio
    )
    return [report.judged(SCALING_RANGE[1], _in_range(ratio, SCALING_RANGE))]


SUITES: Dict[str, Trial] = {
    'moments': moments_trial,
    'composition': composition_trial,
    'schrodinger': schrodinger_trial,
    'delta-limit': delta_trial,
    'eom': eom_trial,
}


def run_suite(
        name: str,
        params: ModelParams,
        seed: int,
        trials: int,
        jobs: int = 1,
        euclidean: bool = False,
        tolerances: Optional[Tolerances] = None,
        progress: Optional[Callable[[int], None]] = None
) -> List[ResidualReport]:
    """
    Run a verification suite over seeded random configurations.

    Parameters
    ----------
    name: str
        One of the SUITES keys, or 'all' to run them in turn
    params: ModelParams
        Physical parameters; alpha defaults to 1e-3 when zero
    seed: int
        Root seed, every trial drawing from its own spawned stream
    trials: int
        Number of random configurations
    jobs: int
        Number of worker threads
    euclidean: bool
        Use Euclidean times where the check accepts both kinds
    tolerances: Tolerances
        Thresholds of the checks, the default ones if not given
    progress: Callable[[int], None]
        Called with the number of completed trials, counted across the
        suites when running all of them
    Returns
    -------
    The reports, ordered by check and trial; identical for identical seeds.
    """

    if name == 'all':
        return list(more_itertools.flatten(
            run_suite(
                suite, params, seed, trials, jobs, euclidean, tolerances,
                _offset(progress, index * trials)
            )
            for index, suite in enumerate(SUITES)
        ))
    if name not in SUITES:
        raise DomainError(_suite_message(name))

    if not params.alpha:
        params = params.replace(alpha=DEFAULT_ALPHA)
    tolerances = tolerances or Tolerances()
    children = np.random.SeedSequence(seed).spawn(trials)

    logger.info('Running suite %s: %d trials, seed %d' % (name, trials, seed))
    reports = []
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = pool.map(
            partial(_run_trial, SUITES[name], params, euclidean, tolerances),
            children
        )
        for trial, batch in enumerate(results):
            reports.extend(r.replayed(seed, trial) for r in batch)
            logger.debug('Suite %s, trial %d done' % (name, trial))
            if progress is not None:
                progress(trial + 1)

    failed = count_failures(reports)
    passed = len(reports) - failed
    logger.info('Suite %s done: %d passed, %d failed' % (name, passed, failed))
    return sorted(reports, key=lambda r: (r.label, r.trial))


def count_failures(reports: List[ResidualReport]) -> int:
    return more_itertools.quantify(reports, lambda r: r.passed is False)


def _run_trial(
        trial: Trial,
        params: ModelParams,
        euclidean: bool,
        tolerances: Tolerances,
        child: np.random.SeedSequence
) -> List[ResidualReport]:
    rng = np.random.Generator(np.random.PCG64(child))
    return trial(rng, params, euclidean, tolerances)


def _offset(progress, offset: int):
    if progress is None:
        return None
    return lambda done: progress(offset + done)


def _suite_message(name: str) -> str:
    return __SUITE_ERROR % (name, ', '.join(['all', *SUITES]))
