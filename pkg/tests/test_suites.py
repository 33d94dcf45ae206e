import pytest

from cato_wds import SUITES, create_suite
from cato_wds.base.suite_base import ERROR, FAIL, PASS, ConfiguredSuite, guarded
from cato_wds.errors import CatoError
from cato_wds.suites.abcd import AbcdSuite
from cato_wds.suites.bch import BchSuite
from cato_wds.suites.chevalley import ChevalleySuite, roots_report
from cato_wds.suites.integrality import DEFAULT_GRID, IntegralitySuite, check_instance
from cato_wds.suites.weyl import WeylSuite


def test_create_suite_uses_default_config():
    suite = create_suite('abcd')
    assert isinstance(suite, AbcdSuite)
    assert suite.config_loader is not None
    assert set(SUITES) == {'abcd', 'bch', 'chevalley', 'integrality', 'weyl'}


def test_create_suite_unknown():
    with pytest.raises(CatoError):
        create_suite('nope')


def test_guarded_turns_errors_into_entries():
    def boom():
        raise CatoError('bad input')

    entry = guarded(boom, {'type': 'A2'})
    assert entry == {'type': 'A2', 'status': ERROR, 'error': 'bad input'}
    assert guarded(lambda: {'value': 1}, {'type': 'A2'})['status'] == PASS


@pytest.mark.parametrize('exc, name', [(ZeroDivisionError('division by zero'), 'ZeroDivisionError'),
                                       (ValueError('bad literal'), 'ValueError')])
def test_guarded_keeps_suite_alive_on_stray_errors(exc, name):
    def boom():
        raise exc

    entry = guarded(boom, {'type': 'B2'})
    assert entry['status'] == ERROR
    assert entry['error'].startswith(name)


def test_guarded_does_not_swallow_other_errors():
    def boom():
        raise KeyError('x')

    with pytest.raises(KeyError):
        guarded(boom, {'type': 'B2'})


def test_summary_counts():
    suite = AbcdSuite()
    report = suite._report([{'status': PASS}, {'status': FAIL}, {'status': ERROR}])
    assert report['summary']['total'] == 3
    assert not report['passed']


def test_update_settings():
    suite = AbcdSuite()
    suite.update_settings({'workers': 2})
    assert suite.settings.workers == 2


def test_abcd_suite():
    report = AbcdSuite().run(types=['A2', 'B2', 'G2'], nmax=3)
    assert report['passed']
    by_type = {entry['type']: entry for entry in report['results']}
    assert by_type['A2']['counterexamples'] == []
    assert by_type['G2']['expected_failure']
    assert any(c['gamma'] == [2, 1] and c['n'] == 3 for c in by_type['G2']['counterexamples'])


def test_abcd_suite_reports_unexpected_failure():
    suite = AbcdSuite()
    suite.update_settings({'expected_abcd_failures': []})
    report = suite.run(types=['G2'], nmax=3)
    assert not report['passed']


def test_abcd_suite_unknown_type_is_error_entry():
    report = AbcdSuite().run(types=['Z9'], nmax=2)
    assert report['results'][0]['status'] == ERROR
    assert not report['passed']


def test_chevalley_suite():
    report = ChevalleySuite().run(types=['A2', 'B2', 'G2'])
    assert report['passed']
    g2 = report['results'][-1]
    assert g2['sublemma_rows']['2'] == 'skipped'
    assert g2['sublemma_rows']['3'] == 'skipped'
    assert g2['sublemma_rows']['5'] > 0


def test_roots_report():
    data = roots_report('G2')
    assert data['t'] == 6
    assert data['string_law'] == 'ok'
    assert data['extraspecial'] == 4


def test_weyl_suite():
    report = WeylSuite().run(types=['A1', 'A2'], depth=4)
    assert report['passed']
    checks = [entry['check'] for entry in report['results']]
    assert checks.count('witness') == 2
    assert checks.count('bgg') == 15


def test_weyl_suite_non_dominant_weights():
    grid = {'A2': ['-2,0', '0,-2', '-3,1', '1,-3', '-2,-2']}
    report = WeylSuite().run(types=['A2'], depth=6, grid=grid)
    assert report['passed']
    bgg = [entry for entry in report['results'] if entry['check'] == 'bgg']
    assert len(bgg) == 5
    assert all(entry['mismatches'] == [] for entry in bgg)


@pytest.mark.slow
def test_weyl_suite_default_depth():
    report = WeylSuite().run(types=['A1', 'A2'])
    assert report['passed']
    assert {entry['depth'] for entry in report['results'] if entry['check'] == 'bgg'} == {8}


def test_weyl_suite_depth_cap():
    with pytest.raises(CatoError):
        WeylSuite().run(types=['A1'], depth=99)


def test_check_instance():
    entry = check_instance({'type': 'A2', 'lambda': '0,1/2', 'gamma': '1,1', 'n': 1, 'p': 5})
    assert entry['status'] == PASS
    assert entry['verdict'] == 'holds'
    assert entry['witness'] == [0, 0, 1]
    assert entry['estimate']


def test_check_instance_bad_input():
    entry = check_instance({'type': 'A2', 'lambda': '0,1/2', 'gamma': '1,0', 'n': 1, 'p': 5})
    assert entry['status'] == ERROR


def test_integrality_suite_instances():
    suite = IntegralitySuite()
    assert suite.grid == DEFAULT_GRID
    report = suite.run(instances=DEFAULT_GRID[:2])
    assert report['passed']
    assert [entry['verdict'] for entry in report['results']] == ['holds', 'holds']


@pytest.mark.slow
def test_integrality_suite_default_config():
    report = create_suite('integrality').run()
    assert report['passed']


def test_bch_suite():
    report = BchSuite().run(types=['A2'], samples=2)
    assert report['passed']
    assert {entry['check'] for entry in report['results']} == {'matrix', 'actions', 'reduction'}


@pytest.mark.slow
def test_bch_suite_full_sample_counts():
    report = BchSuite().run(samples=20)
    assert report['passed']
    samples = {(entry['type'], entry['check']): entry['samples'] for entry in report['results']}
    assert samples[('A2', 'matrix')] == samples[('B2', 'matrix')] == 20
    assert samples[('A2', 'actions')] == 10
    assert all(samples[(t, 'reduction')] == 30 for t in ('A2', 'B2', 'G2'))


@pytest.mark.slow
def test_abcd_all_types():
    assert create_suite('abcd').run(nmax=6)['passed']


def test_suites_share_base():
    for cls in SUITES.values():
        assert issubclass(cls, ConfiguredSuite)
