import json
import pytest

from gupqm.controller import report
from gupqm.controller.report import ActionRecord, BoundRecord, GreenRecord
from gupqm.model.errors import ParameterError
from gupqm.model.green.green import GreenQuery
from gupqm.model.kernels.kernel import KernelValue, kernel
from gupqm.model.system.endpoints import Endpoints, TimeArg
from gupqm.model.system.parameters.ModelParams import ModelParams
from gupqm.model.verify.report import ResidualReport
from test.model.utils import oscillator

EUCLIDEAN = Endpoints((0.1, -0.2), (0.4, 0.3), TimeArg.imaginary(0.7))
REAL = Endpoints((0.0,), (1.0,), TimeArg.real(1.0))

REPORTS = [
    ResidualReport('composition', 1e-14, 2.0, 1e-3, seed=5, trial=0)
        .judged(1e-10),
    ResidualReport('eom', 3e-7, 1.0, 1e-3, 4.01, details={'omega': 1.0}),
]


def test_encode_complex():
    assert report.encode(1 - 2j) == {'re': 1.0, 'im': -2.0}
    assert report.encode((1, 2.5)) == [1, 2.5]
    assert report.encode(TimeArg.imaginary(0.5)) == {'value': 0.5, 'euclidean': True}


def test_kernel_json_keys():
    value = kernel(ModelParams(alpha=0.01), REAL)
    data = json.loads(report.to_json([value]))[0]

    assert list(data) == [
        'amplitude', 'leading_prefactor', 'f', 'S0', 'S1', 'params', 'endpoints'
    ]
    assert data['S0']['re'] == pytest.approx(0.5)
    assert data['S0']['im'] == pytest.approx(0.0)
    assert data['params']['alpha'] == 0.01
    assert data['endpoints']['time']['euclidean'] is False


@pytest.mark.parametrize('e', [REAL, EUCLIDEAN])
def test_kernel_json_is_read_back(e):
    value = kernel(oscillator(D=e.D), e)
    assert report.from_json(report.to_json([value]), KernelValue) == [value]


def test_residual_json_is_read_back():
    assert report.from_json(report.to_json(REPORTS), ResidualReport) == REPORTS


def test_green_record_json():
    record = GreenRecord(GreenQuery(0.5, (0, 0), (1, 0), ModelParams(D=2)), 0.134)

    assert report.from_json(report.to_json([record]), GreenRecord) == [record]
    assert json.loads(report.to_json([record]))[0]['closed'] is None


def test_csv_columns():
    record = ActionRecord(ModelParams(), REAL, 0.5 + 0j, -1 + 0j, 0.49 + 0j)
    header, row = report.to_csv([record]).splitlines()

    assert header.split(',') == [
        'params.m', 'params.hbar', 'params.omega', 'params.alpha', 'params.D',
        'endpoints.q0.0', 'endpoints.qf.0',
        'endpoints.time.value.re', 'endpoints.time.value.im',
        'endpoints.time.euclidean',
        'S0.re', 'S0.im', 'S1.re', 'S1.im', 'total.re', 'total.im'
    ]
    assert row.split(',')[4] == '1'
    assert row.split(',')[9] == 'false'
    assert row.split(',')[-2] == '0.48999999999999999'


def test_csv_optional_columns():
    lines = report.to_csv(REPORTS).splitlines()
    header = lines[0].split(',')

    assert header[-1] == 'details.omega'
    assert lines[1].split(',')[header.index('passed')] == 'true'
    assert lines[2].split(',')[header.index('passed')] == ''
    assert lines[1].endswith(',')


def test_csv_rows():
    records = [BoundRecord(0.5, 2.25), BoundRecord(1.0, 1.5)]

    assert report.dumps(records, 'csv') == 'dP,dQ\n0.5,2.25\n1,1.5\n'


def test_unknown_format():
    with pytest.raises(ParameterError):
        report.dumps(REPORTS, 'xml')


def test_emit(tmp_path, capsys):
    path = tmp_path / 'bound.csv'
    records = [BoundRecord(0.5, 2.25)]

    report.emit(records, 'csv', str(path))
    assert path.read_text() == 'dP,dQ\n0.5,2.25\n'
    assert capsys.readouterr().out == ''

    report.emit(records, 'json')
    assert json.loads(capsys.readouterr().out) == [{'dP': 0.5, 'dQ': 2.25}]
