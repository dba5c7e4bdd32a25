import cmath
import csv
import io
import json
import math
import pytest

from gupqm.controller import cli
from gupqm.controller.config import RunConfig, Sweep
from gupqm.model.errors import ParameterError
from gupqm.model.system.parameters.ModelParams import ModelParams


def execute(capsys, *argv):
    status = cli.main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_kernel(capsys):
    status, out, _ = execute(
        capsys, 'kernel', '--alpha', '0.01', '--q0', '0', '--qf', '1', '--time', '1'
    )
    data = json.loads(out)
    amplitude = complex(data[0]['amplitude']['re'], data[0]['amplitude']['im'])
    expected = cmath.sqrt(1 / (2j * math.pi)) * (0.94 + 0.03j) * cmath.exp(0.49j)

    assert status == cli.SUCCESS
    assert len(data) == 1
    assert amplitude == pytest.approx(expected)


def test_action(capsys):
    status, out, _ = execute(
        capsys, 'action', '--alpha', '0.01', '--q0', '0', '--qf', '1'
    )
    record = json.loads(out)[0]

    assert status == cli.SUCCESS
    assert record['total']['re'] == pytest.approx(0.49)
    assert record['S1']['re'] == pytest.approx(-1.0)


def test_bound_csv(capsys):
    status, out, _ = execute(
        capsys, 'bound', '--alpha', '1', '--samples', '40', '--format', 'csv'
    )
    rows = list(csv.DictReader(io.StringIO(out)))

    assert status == cli.SUCCESS
    assert len(rows) == 40
    assert float(rows[0]['dP']) == pytest.approx(0.2)
    assert float(rows[-1]['dP']) == pytest.approx(2.0)
    assert min(float(row['dQ']) for row in rows) >= math.sqrt(3) - 1e-12


def test_spectrum(capsys):
    status, out, _ = execute(
        capsys, 'spectrum', '--system', 'sho', '--alpha', '1e-5',
        '--basis', '16', '--levels', '3'
    )
    records = json.loads(out)

    assert status == cli.SUCCESS
    assert [r['n1'] for r in records] == [0, 1, 2]
    assert all(r['n2'] is None for r in records)
    assert all(r['relative'] < 1e-6 for r in records)


def test_spectrum_shell(capsys):
    status, out, _ = execute(
        capsys, 'spectrum', '--system', 'sho', '--dim', '2', '--alpha', '1e-4',
        '--basis', '16', '--shell', '1'
    )
    record = json.loads(out)[0]

    assert status == cli.SUCCESS
    assert record['states'] == [[1, 0], [0, 1]]
    assert len(record['oracle']) == 2


def test_green(capsys):
    status, out, _ = execute(
        capsys, 'green', '--q0', '0,0', '--qf', '1,0', '--epsilon', '0.5'
    )
    record = json.loads(out)[0]

    assert status == cli.SUCCESS
    assert record['closed'] == pytest.approx(0.13401, abs=1e-5)
    assert record['relative'] < 1e-6
    assert record['query']['epsilon'] == 0.5


def test_green_without_closed_form(capsys):
    status, out, _ = execute(
        capsys, 'green', '--q0', '0,0,0', '--qf', '1,0,0', '--alpha', '1e-3'
    )
    record = json.loads(out)[0]

    assert status == cli.SUCCESS
    assert record['numeric'] > 0
    assert record['closed'] is None


def test_sweep_keeps_the_order(capsys):
    status, out, _ = execute(
        capsys, 'kernel', '--q0', '0', '--qf', '1', '--sweep', 'time:1:2:3',
        '--jobs', '2'
    )
    times = [r['endpoints']['time']['value']['re'] for r in json.loads(out)]

    assert status == cli.SUCCESS
    assert times == [1.0, 1.5, 2.0]


def test_output_file(capsys, tmp_path):
    path = tmp_path / 'action.csv'
    status, out, _ = execute(
        capsys, 'action', '--format', 'csv', '--out', str(path)
    )

    assert status == cli.SUCCESS
    assert out == ''
    assert path.read_text().startswith('params.m,')


@pytest.mark.parametrize('argv', [
    ['spectrum', '--system', 'sho', '--sweep', 'alpha:0:1e-3:2'],
    ['kernel', '--dim', '3', '--q0', '0,0'],
    ['kernel', '--alpha', '-1'],
    ['verify', '--tolerance', 'composition'],
    ['kernel', '--config', 'missing.cfg'],
])
def test_usage_errors(capsys, argv):
    status, _, err = execute(capsys, *argv)

    assert status == cli.USAGE
    assert err.startswith('gupqm: error: ')


def test_caustic(capsys):
    status, out, err = execute(
        capsys, 'kernel', '--system', 'sho', '--q0', '0', '--qf', '1',
        '--time', repr(math.pi)
    )

    assert status == cli.USAGE
    assert out == ''
    assert 'Caustic' in err


def test_kernel_at_vanishing_omega(capsys):
    status, out, _ = execute(
        capsys, 'kernel', '--omega', '1e-9', '--alpha', '1e-3', '--q0', '0.1',
        '--qf', '0.6'
    )

    assert status == cli.SUCCESS
    assert len(json.loads(out)) == 1


def test_unknown_command(capsys):
    with pytest.raises(SystemExit) as error:
        cli.main(['integrate'])
    assert error.value.code == 2


def test_verify_is_deterministic(capsys):
    argv = ['verify', 'eom', '--system', 'sho', '--dim', '2', '--trials', '2',
            '--seed', '3']
    first = execute(capsys, *argv)
    second = execute(capsys, *argv)

    assert first[0] == cli.SUCCESS
    assert first[1] == second[1]
    assert {r['seed'] for r in json.loads(first[1])} == {3}


def test_verify_all_passes(capsys):
    status, out, _ = execute(
        capsys, 'verify', 'all', '--trials', '20', '--seed', '7', '--dim', '2',
        '--alpha', '1e-3', '--jobs', '4'
    )

    assert status == cli.SUCCESS
    assert all(r['passed'] is not False for r in json.loads(out))


def test_verify_failure(capsys):
    status, out, _ = execute(
        capsys, 'verify', 'composition', '--system', 'sho', '--dim', '2',
        '--trials', '1', '--tolerance', 'composition=1e-30'
    )
    canonical = [r for r in json.loads(out) if r['label'] == 'composition']

    assert status == cli.FAILURE
    assert canonical[0]['passed'] is False
    assert canonical[0]['tolerance'] == 1e-30


def test_run():
    status, text = cli.run(RunConfig('bound', samples=2, format='csv'))

    assert status == cli.SUCCESS
    assert text.splitlines()[0] == 'dP,dQ'
    assert len(text.splitlines()) == 3


def test_run_rejects_sweeps_of_verify():
    config = RunConfig('verify', params=ModelParams(), sweep=Sweep('alpha', 0, 1, 2))
    with pytest.raises(ParameterError):
        cli.run(config)
