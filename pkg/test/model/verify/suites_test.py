import pytest

from gupqm.model.errors import DomainError
from gupqm.model.system.parameters.ModelParams import ModelParams
from gupqm.model.verify.report import ResidualReport
from gupqm.model.verify.suites import SUITES, Tolerances, count_failures, run_suite
from test.model.utils import oscillator


def test_report_verdicts():
    report = ResidualReport('check', 2e-6, 2.0, 1e-3)

    assert report.relative == pytest.approx(1e-6)
    assert report.judged(1e-5).passed
    assert not report.judged(1e-7).passed
    assert report.judged(1.0, False).tolerance == 1.0
    assert ResidualReport('zero', 1e-3, 0.0, 0.0).relative == 1e-3
    assert report.replayed(7, 3).seed == 7
    assert report.passed is None


def test_moments_suite_passes():
    reports = run_suite('moments', ModelParams(), seed=3, trials=4)

    assert len(reports) == 4 * 12
    assert count_failures(reports) == 0
    assert {r.seed for r in reports} == {3}
    assert {r.trial for r in reports} == {0, 1, 2, 3}


def test_canonical_composition_passes():
    reports = run_suite('composition', oscillator(D=2), seed=5, trials=3)
    canonical = [r for r in reports if r.label == 'composition']

    assert len(canonical) == 3
    assert all(r.passed for r in canonical)
    assert {r.label for r in reports} == {
        'composition', 'composition-beta1', 'composition-beta2',
        'composition-beta3'
    }


def test_eom_suite_passes():
    reports = run_suite('eom', oscillator(D=2), seed=11, trials=3)
    assert count_failures(reports) == 0


@pytest.mark.parametrize('name', ['schrodinger', 'delta-limit'])
@pytest.mark.parametrize('params', [ModelParams(D=2, alpha=1e-3), oscillator(D=2)])
def test_physics_suites_pass(name, params):
    reports = run_suite(name, params, seed=7, trials=20, jobs=4)
    assert count_failures(reports) == 0


def test_all_suites_pass():
    reports = run_suite('all', ModelParams(D=2, alpha=1e-3), seed=7, trials=20, jobs=4)
    assert count_failures(reports) == 0


def test_suites_are_deterministic():
    params = oscillator(D=1)
    first = run_suite('delta-limit', params, seed=7, trials=2)
    second = run_suite('delta-limit', params, seed=7, trials=2, jobs=2)

    assert first == second
    assert first != run_suite('delta-limit', params, seed=8, trials=2)


def test_all_suites_report_progress():
    done = []
    reports = run_suite(
        'all', oscillator(D=2), seed=7, trials=2, progress=done.append
    )

    assert done == list(range(1, 2 * len(SUITES) + 1))
    assert {r.seed for r in reports} == {7}
    assert any(r.label == 'schrodinger' for r in reports)
    assert any(r.label == 'eom' for r in reports)


def test_alpha_defaults_when_zero():
    reports = run_suite('eom', oscillator(D=2, alpha=0.0), seed=1, trials=1)
    assert reports[0].alpha_used == 1e-3


def test_tolerance_override():
    reports = run_suite(
        'composition', oscillator(D=2), seed=5, trials=1,
        tolerances=Tolerances(composition=1e-30)
    )
    canonical = [r for r in reports if r.label == 'composition']

    assert canonical[0].tolerance == 1e-30


def test_unknown_suite():
    with pytest.raises(DomainError):
        run_suite('nothing', ModelParams(), seed=1, trials=1)
