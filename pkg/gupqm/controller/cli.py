import argparse
import numpy as np
import progressbar
import sys

from concurrent.futures import ThreadPoolExecutor
from gupqm.controller import report
from gupqm.controller.config import KEYS, TOLERANCE_PREFIX, RunConfig
from gupqm.controller.config import from_file
from gupqm.controller.report import ActionRecord, BoundRecord, GreenRecord
from gupqm.controller.report import LevelRecord
from gupqm.logger import logger
from gupqm.model.algebra.uncertainty import bound_curve
from gupqm.model.classical.action import action
from gupqm.model.errors import GUPError, ParameterError
from gupqm.model.green.green import GreenQuery, green_free_2d_closed
from gupqm.model.green.green import laplace_numeric
from gupqm.model.kernels.kernel import kernel
from gupqm.model.spectrum.energies import formula_levels
from gupqm.model.spectrum.oracle import oscillator_matrix_oracle, shell_report
from gupqm.model.verify.suites import SUITES, count_failures, run_suite
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

COMMANDS = ('kernel', 'action', 'spectrum', 'green', 'bound', 'verify')
SWEEPABLE = ('kernel', 'action', 'green')

# exit status
SUCCESS = 0
FAILURE = 1
USAGE = 2

__SWEEP_ERROR = "Command '%s' does not accept a sweep"
__TOLERANCE_ERROR = "Tolerance override '%s' is not of the form name=value"


def parser() -> argparse.ArgumentParser:
    """The argument parser; every option is kept as text until validated."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='key=value file, flags override it')
    common.add_argument('--system', choices=('free', 'sho'))
    common.add_argument('--mass')
    common.add_argument('--hbar')
    common.add_argument('--omega')
    common.add_argument('--alpha')
    common.add_argument('--dim')
    common.add_argument('--q0', help='comma separated initial point')
    common.add_argument('--qf', help='comma separated final point')
    common.add_argument('--time', help='real time, or tau with --euclidean')
    common.add_argument('--euclidean', action='store_const', const='true')
    common.add_argument('--epsilon')
    common.add_argument('--levels')
    common.add_argument('--basis', help='oscillator states per axis')
    common.add_argument('--shell', help='report a degenerate shell')
    common.add_argument('--dp-min')
    common.add_argument('--dp-max')
    common.add_argument('--samples')
    common.add_argument('--beta1')
    common.add_argument('--beta2')
    common.add_argument('--beta3')
    common.add_argument('--sweep', help='name:start:stop:count[:log]')
    common.add_argument('--format', choices=('json', 'csv'))
    common.add_argument('--out')
    common.add_argument('--seed', help='defaults to $GUPQM_SEED, then 0')
    common.add_argument('--trials')
    common.add_argument('--jobs')
    common.add_argument('--progress', action='store_const', const='true')
    common.add_argument(
        '--tolerance', action='append', default=[], metavar='NAME=VALUE'
    )

    result = argparse.ArgumentParser(
        prog='gupqm',
        description='First-order GUP propagators, spectra, Green functions '
                    'and their consistency checks'
    )
    commands = result.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        sub = commands.add_parser(command, parents=[common])
        if command == 'verify':
            sub.add_argument(
                'target', nargs='?', choices=('all', *SUITES), default=None
            )
    return result


def kernel_records(config: RunConfig) -> List[Any]:
    return [kernel(config.params, config.endpoints, config.spec)]


def action_records(config: RunConfig) -> List[Any]:
    pair = action(config.params, config.endpoints)
    return [ActionRecord(
        config.params, config.endpoints, complex(pair.S0), complex(pair.S1),
        complex(pair.total(config.params.alpha))
    )]


def green_records(config: RunConfig) -> List[Any]:
    p = config.params
    query = GreenQuery(config.epsilon, config.q0, config.qf, p)
    numeric = laplace_numeric(p, config.q0, config.qf, config.epsilon)
    if p.D != 2:
        return [GreenRecord(query, numeric)]
    closed = green_free_2d_closed(query)
    relative = abs(numeric - closed) / abs(closed)
    return [GreenRecord(query, numeric, closed, relative)]


def spectrum_records(config: RunConfig) -> List[Any]:
    p = config.params
    if config.shell is not None:
        return [shell_report(p, config.shell, config.basis)]

    levels = formula_levels(p, config.levels)
    oracle = oscillator_matrix_oracle(p, config.basis, config.levels)
    return [
        LevelRecord(
            level.n1, level.n2, level.value, value,
            abs(level.value - value) / abs(value)
        )
        for level, value in zip(levels, oracle)
    ]


def bound_records(config: RunConfig) -> List[Any]:
    grid = np.linspace(config.dp_min, config.dp_max, config.samples)
    curve = bound_curve(config.params.alpha, config.params.hbar, grid)
    return [BoundRecord(dP, dQ) for dP, dQ in curve]


def verify_records(config: RunConfig) -> List[Any]:
    target = config.target or 'all'
    total = config.trials * (len(SUITES) if target == 'all' else 1)

    bar = None
    if config.progress:
        bar = progressbar.ProgressBar(max_value=total, fd=sys.stderr)

    reports = run_suite(
        target, config.params, config.seed, config.trials, config.jobs,
        config.euclidean, config.tolerances,
        bar.update if bar is not None else None
    )
    if bar is not None:
        bar.finish()
    return reports


PRODUCERS: Dict[str, Callable[[RunConfig], List[Any]]] = {
    'kernel': kernel_records,
    'action': action_records,
    'spectrum': spectrum_records,
    'green': green_records,
    'bound': bound_records,
    'verify': verify_records,
}


def sweep(
        config: RunConfig,
        producer: Callable[[RunConfig], List[Any]]
) -> List[Any]:
    """
    Run the producer over the sweep values on config.jobs threads. The
    records are returned in the order of the values.
    """

    values = config.sweep.values()
    logger.info('Sweeping %s over %d values' % (config.sweep.name, len(values)))
    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        batches = pool.map(lambda v: producer(config.swept(v)), values)
        return [record for batch in batches for record in batch]


def run(config: RunConfig) -> Tuple[int, str]:
    """
    Execute a configured command.

    Parameters
    ----------
    config: RunConfig
        The complete configuration
    Returns
    -------
    The exit status (1 if a verification failed, 0 otherwise) and the
    serialized report.
    """

    producer = PRODUCERS[config.command]
    if config.sweep is None:
        records = producer(config)
    elif config.command in SWEEPABLE:
        records = sweep(config, producer)
    else:
        raise ParameterError(__SWEEP_ERROR % config.command)

    status = SUCCESS
    if config.command == 'verify' and count_failures(records):
        status = FAILURE
    return status, report.dumps(records, config.format)


def settings(args: argparse.Namespace) -> Dict[str, str]:
    """The flags given on the command line, keyed as in the config file."""
    flags = {
        key: value for key, value in vars(args).items()
        if key in KEYS and value is not None
    }
    for override in args.tolerance:
        name, separator, value = override.partition('=')
        if not separator:
            raise ParameterError(__TOLERANCE_ERROR % override)
        flags[TOLERANCE_PREFIX + name.strip()] = value.strip()
    return flags


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the command line; returns the exit status."""
    args = parser().parse_args(argv)
    try:
        config = from_file(args.command, args.config, settings(args))
        status, text = run(config)
        report.write(text, config.out)
    except (GUPError, OSError) as error:
        print(f'gupqm: error: {error}', file=sys.stderr)
        return USAGE
    return status
