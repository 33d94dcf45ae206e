from fractions import Fraction

import pytest

from cato_wds.errors import CatoError, DepthError, HypothesisError
from cato_wds.lie.rootsys import Weight, build_root_system
from cato_wds.modules.modules_o import build_verma, simple_quotient
from cato_wds.padic.integrality import (FAILS, HOLDS, VACUOUS, abcd_check, both_conditions_verify,
                                        estimate_verify, estimate_witness, format_report_row, hyp_gate,
                                        m0_min, make_instance, relation_space, rescaled_solution,
                                        sublemma_table, vp_factorial)
from cato_wds.utils.linalg import local_feasibility

W = Weight.parse


@pytest.fixture
def a2_report(a2, table_a2):
    lam = W('0,1/2')
    inst = make_instance(a2, lam, (1, 1), 1, 5, m0=0)
    return relation_space(simple_quotient(lam, 2, table_a2), inst)


@pytest.mark.parametrize('type_label, p, ok', [
    ('A3', 2, True),
    ('B2', 2, False),
    ('G2', 3, False),
    ('G2', 5, True),
])
def test_hyp_gate(type_label, p, ok):
    ctx = hyp_gate(build_root_system(type_label), p)
    assert ctx.hyp_ok is ok
    assert (ctx.violation is None) is ok


def test_hyp_gate_requires_prime(a2):
    with pytest.raises(CatoError):
        hyp_gate(a2, 6)


@pytest.mark.parametrize('n, p, expected', [(4, 2, 3), (0, 5, 0), (25, 5, 6), (10, 3, 4)])
def test_vp_factorial(n, p, expected):
    assert vp_factorial(n, p) == expected


def test_m0_min():
    assert m0_min(W('1/5,0'), 5) == 1
    assert m0_min(W('3/4'), 2) == 2
    assert m0_min(W('2,-7'), 7) == 0
    assert m0_min(W('1/25,1/5'), 5) == 2


def test_abcd_holds_for_a2(a2):
    assert abcd_check(a2, (1, 1), 6) == {'holds': True, 'counterexample': None}
    assert abcd_check(a2, (1, 1), 0)['holds']


def test_abcd_g2_counterexample(g2):
    verdict = abcd_check(g2, (2, 1), 3)
    assert not verdict['holds']
    counterexample = verdict['counterexample']
    assert counterexample['n'] == 3
    assert counterexample['sum'] == 2
    assert sorted(counterexample['parts']) == [[3, 1], [3, 2]]


@pytest.mark.slow
def test_abcd_holds_for_f4():
    rs = build_root_system('F4')
    for gamma in rs.positive_roots:
        assert abcd_check(rs, gamma, 4)['holds']


def test_make_instance_validation(a2):
    lam = W('1/5,0')
    assert make_instance(a2, lam, (1, 1), 2, 5).m0 == 1
    with pytest.raises(CatoError):
        make_instance(a2, lam, (1, 1), 2, 5, m0=0)
    with pytest.raises(CatoError):
        # (0,1) lies in the Levi part for λ = (1/5, 0)
        make_instance(a2, lam, (0, 1), 1, 5)
    with pytest.raises(CatoError):
        make_instance(a2, lam, (1, 1), -1, 5)


def test_relation_space_a2(a2_report):
    assert a2_report.index_set == [(1, 1, 0), (0, 0, 1)]
    assert a2_report.particular_solution == [0, 1]
    assert a2_report.kernel_rank == 1
    kernel = a2_report.kernel_basis[0]
    assert abs(kernel[1] / kernel[0]) == 1
    assert a2_report.long_indices() == [0, 1]


def test_relation_space_scaling(a2, table_a2):
    lam = W('0,1/2')
    inst = make_instance(a2, lam, (1, 1), 1, 5, m0=1)
    report = relation_space(simple_quotient(lam, 2, table_a2), inst)
    kernel = report.kernel_basis[0]
    assert abs(kernel[1] / kernel[0]) == 5
    assert both_conditions_verify(report) == HOLDS


def test_both_conditions_a2(a2_report):
    assert both_conditions_verify(a2_report) == HOLDS
    assert a2_report.verdict == HOLDS
    assert a2_report.witness == (0, 0, 1)
    assert estimate_verify(a2_report)


def test_irreducible_verma_case(a1, table_a1):
    lam = W('1/2')
    inst = make_instance(a1, lam, (1,), 2, 5)
    report = relation_space(simple_quotient(lam, 2, table_a1), inst)
    assert report.index_set == [(2,)]
    assert report.kernel_rank == 0
    assert report.particular_solution == [1]
    assert both_conditions_verify(report) == HOLDS
    assert report.witness == (2,)


def test_g2_top_root_verma_case(g2, table_g2):
    lam = W('1/2,1/3')
    inst = make_instance(g2, lam, (3, 2), 1, 5)
    report = relation_space(build_verma(lam, 5, table_g2), inst)
    assert report.kernel_rank == 0
    assert both_conditions_verify(report) == HOLDS
    assert report.witness == (0, 0, 0, 0, 0, 1)


def test_n_zero_is_vacuous(a2, table_a2):
    lam = W('0,1/2')
    inst = make_instance(a2, lam, (1, 1), 0, 5)
    report = relation_space(simple_quotient(lam, 2, table_a2), inst)
    assert both_conditions_verify(report) == VACUOUS


def test_relation_space_rejects(a2, b2, table_a2, table_b2):
    lam = W('0,1/2')
    inst = make_instance(a2, lam, (1, 1), 2, 5)
    with pytest.raises(DepthError):
        relation_space(simple_quotient(lam, 3, table_a2), inst)
    with pytest.raises(CatoError):
        relation_space(simple_quotient(W('1/2,1/2'), 4, table_a2), inst)
    b2_lam = W('1/3,1/3')
    bad = make_instance(b2, b2_lam, (1, 1), 1, 2)
    with pytest.raises(HypothesisError):
        relation_space(simple_quotient(b2_lam, 2, table_b2), bad)


def test_estimate_witness_prefers_long_index(a2_report):
    assert estimate_witness(a2_report) == (0, 0, 1)


def test_rescaled_solution(a2_report):
    c = [Fraction(1), Fraction(0)]
    assert rescaled_solution(a2_report, c) == [Fraction(1, 5), Fraction(0)]


def test_format_report_row(a2_report):
    both_conditions_verify(a2_report)
    row = format_report_row(a2_report)
    assert row['verdict'] == HOLDS
    assert row['lambda'] == '0,1/2'
    assert row['kernel_rank'] == '1'


def test_report_json(a2_report):
    both_conditions_verify(a2_report)
    data = a2_report.to_json()
    assert data['instance']['gamma'] == [1, 1]
    assert data['witness'] == [0, 0, 1]
    assert data['particular_solution'] == ['0', '1']


def test_local_feasibility():
    # c = (0, 1) + t·(1, -1): 5 | t and 5 | 1 - t cannot both hold
    feasible, residuals = local_feasibility([[1], [-1]], [0, 1], 5)
    assert not feasible
    assert residuals == [1]
    assert local_feasibility([[1], [1]], [0, 0], 5)[0]
    assert local_feasibility([[5], [0]], [1, 0], 5)[0]
    assert not local_feasibility([], [Fraction(1, 5)], 5)[0]


def test_failing_negation_is_reported(a2_report):
    a2_report.particular_solution = [Fraction(0), Fraction(5)]
    assert both_conditions_verify(a2_report) == FAILS


def test_sublemma_table(a2, b2):
    rows = sublemma_table(a2, 5)
    assert [(r['alpha'], r['gamma'], r['k0']) for r in rows] == [(1, [1, 1], 1), (2, [1, 1], 1)]
    assert all(abs(r['c']) == 1 for r in rows)
    with pytest.raises(HypothesisError):
        sublemma_table(b2, 2)
