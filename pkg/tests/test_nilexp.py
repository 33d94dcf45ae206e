import random
from fractions import Fraction

import pytest

from cato_wds.errors import CatoError, DepthError
from cato_wds.lie.chevalley import bracket
from cato_wds.lie.nilexp import (UnipotentElement, adjoint_action, b_sets, bch, bch_matrix_check,
                                 choose_extremal, coefficient_valuations, conjugation_identity_check,
                                 delta_action, extremal_component_check, group_law_check,
                                 log_word_coefficient, nilpotency_class, observed_valuations,
                                 random_unipotent, reduce_fully, reduction_step, sigma_series)
from cato_wds.lie.rootsys import Weight
from cato_wds.modules.modules_o import build_verma
from cato_wds.padic.integrality import vp_factorial

W = Weight.parse


def unipotent(table, coefficients, levi=()):
    return UnipotentElement.from_coefficients(table, table.rs.parabolic(levi), coefficients)


def test_log_word_coefficients():
    assert log_word_coefficient((0,)) == 1
    assert log_word_coefficient((0, 1)) == Fraction(1, 2)
    assert log_word_coefficient((1, 0)) == Fraction(-1, 2)
    assert log_word_coefficient((0, 0)) == 0
    assert log_word_coefficient((0, 0, 1)) == Fraction(1, 12)


def test_nilpotency_class(a2, g2):
    assert nilpotency_class(a2) == 2
    assert nilpotency_class(g2) == 5
    assert nilpotency_class(a2, a2.parabolic([0])) == 1


def test_bch_a2(table_a2):
    x, y = table_a2.y((1, 0)), table_a2.y((0, 1))
    result = bch(x, y)
    assert result == x + y + bracket(x, y) * Fraction(1, 2)
    assert abs(result.coefficient(table_a2.root_generator((-1, -1)))) == Fraction(1, 2)


def test_bch_trivial_cases(table_a2):
    x = table_a2.y((1, 0))
    z = table_a2.y((1, 1))
    assert bch(x, table_a2.zero()) == x
    assert bch(z, x) == z + x


def test_bch_rejects_non_radical(table_a2):
    with pytest.raises(CatoError):
        bch(table_a2.x((1, 0)), table_a2.y((0, 1)))
    with pytest.raises(CatoError):
        bch(table_a2.y((1, 0)), table_a2.y((0, 1)), table_a2.rs.parabolic([0]))


@pytest.mark.parametrize('table_name', ['table_a2', 'table_b2', 'table_g2'])
def test_bch_matrix_check(request, table_name):
    table = request.getfixturevalue(table_name)
    rng = random.Random(7)
    parabolic = table.rs.parabolic(())
    for _ in range(3):
        x = random_unipotent(table, parabolic, rng).log_coords
        y = random_unipotent(table, parabolic, rng).log_coords
        assert bch_matrix_check(x, y)


def test_unipotent_element(table_a2):
    u = unipotent(table_a2, {(1, 0): 2, (1, 1): Fraction(1, 5)})
    assert u.support() == [(1, 0), (1, 1)]
    assert u.coefficient((1, 1)) == Fraction(1, 5)
    assert u.component((1, 0)) == table_a2.y((1, 0)) * 2
    assert (u * u.inverse()).log_coords.is_zero()
    assert u.to_json() == {'I': [], 'log': {'y[1,0]': '2', 'y[1,1]': '1/5'}}
    with pytest.raises(CatoError):
        UnipotentElement(table_a2.x((1, 0)), table_a2.rs.parabolic(()))


def test_delta_identity(table_a2):
    module = build_verma(W('1/2,1/3'), 3, table_a2)
    v = module.highest_weight_vector() + module.monomial_vector((0, 1, 0))
    identity = UnipotentElement.identity(table_a2, table_a2.rs.parabolic(()))
    assert delta_action(identity, v) == v
    assert sigma_series(identity, module) == module.highest_weight_vector()


def test_sigma_a1(table_a1):
    module = build_verma(W('1/2'), 3, table_a1)
    u = unipotent(table_a1, {(1,): 2})
    sigma = sigma_series(u, module)
    assert sigma.component((0,)) == (1,)
    assert sigma.component((1,)) == (-2,)
    assert sigma.component((2,)) == (2,)
    assert sigma.component((3,)) == (Fraction(-4, 3),)


def test_group_law(table_a2):
    module = build_verma(W('1/2,1/3'), 4, table_a2)
    u1 = unipotent(table_a2, {(1, 0): 1, (0, 1): Fraction(1, 2)})
    u2 = unipotent(table_a2, {(0, 1): -3, (1, 1): 2})
    assert group_law_check(u1, u2, module.highest_weight_vector())


def test_conjugation_identity(table_a2):
    module = build_verma(W('1/2,1/3'), 4, table_a2)
    u = unipotent(table_a2, {(1, 0): 1, (0, 1): 2})
    v = module.highest_weight_vector()
    assert conjugation_identity_check(u, table_a2.h(0), v)
    assert conjugation_identity_check(u, table_a2.x((1, 0)), v)


def test_adjoint_action_on_h(table_a1):
    u = unipotent(table_a1, {(1,): 3})
    h = table_a1.h(0)
    # Ad(u^-1) h = h - 3[y, h] = h - 6y
    assert adjoint_action(u, h) == h - table_a1.y((1,)) * 6


def test_b_sets(table_a2):
    p, s = 3, 2
    u = unipotent(table_a2, {(1, 1): Fraction(p) ** (s - 1), (1, 0): Fraction(p) ** s})
    support, plus, prime = b_sets(u, s, p)
    assert support == [(1, 0), (1, 1)]
    assert plus == [(1, 1)]
    assert prime == [(1, 0)]
    assert b_sets(u, 0, p)[1] == []


def test_reduction_vanishing_branch(table_a2):
    u = unipotent(table_a2, {(1, 1): 1, (1, 0): 3})
    trace = reduce_fully(u, 1, 3)
    assert trace[0]['branch'] == 'vanishing'
    assert trace[0]['ht_prime'] == 1
    assert trace[-1]['branch'] == 'done'
    assert trace[-1]['B_prime'] == []
    assert trace[-1]['B_plus'] == [[1, 1]]


def test_reduction_raised_branch(table_a2):
    u = unipotent(table_a2, {(1, 0): 1, (0, 1): 3})
    trace = reduce_fully(u, 1, 3)
    assert trace[0]['branch'] == 'raised'
    heights = [entry['ht_prime'] for entry in trace if entry['ht_prime'] is not None]
    assert all(a < b for a, b in zip(heights, heights[1:]))
    assert len(trace) - 1 <= 2


def test_reduction_step_requires_b_plus(table_a2):
    u = unipotent(table_a2, {(1, 0): 9})
    with pytest.raises(CatoError):
        reduction_step(u, 1, 3)


def test_reduction_step_fixed_point(table_a2):
    u = unipotent(table_a2, {(1, 0): Fraction(1, 3)})
    assert reduction_step(u, 0, 3) == u


def test_choose_extremal(a2):
    assert choose_extremal(a2, [(1, 1), (0, 1)]) == (0, 1)
    assert choose_extremal(a2, [(1, 0), (0, 1), (1, 1)]) == (0, 1)


def test_extremal_component(table_a2):
    module = build_verma(W('1/2,1/3'), 4, table_a2)
    u = unipotent(table_a2, {(1, 0): Fraction(1, 5), (1, 1): 5})
    assert extremal_component_check(u, (1, 0), module)


def test_ledger_a1(table_a1):
    module = build_verma(W('1/2'), 4, table_a1)
    u = unipotent(table_a1, {(1,): 1})
    ledger = coefficient_valuations(u, (1,), module, 2)
    assert ledger[0] == {'n': 0, 'vp': 0}
    assert ledger[4] == {'n': 4, 'vp': -3}
    assert observed_valuations(u, (1,), module, 2) == ledger


def test_ledger_divergence(table_a1):
    module = build_verma(W('1/3'), 6, table_a1)
    u = unipotent(table_a1, {(1,): Fraction(1, 5)})
    ledger = coefficient_valuations(u, (1,), module, 5)
    assert [entry['vp'] for entry in ledger] == [-n - vp_factorial(n, 5) for n in range(7)]
    values = [entry['vp'] for entry in ledger]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert observed_valuations(u, (1,), module, 5) == ledger


def test_ledger_rejects(table_a2):
    module = build_verma(W('1/2,1/3'), 4, table_a2)
    u = unipotent(table_a2, {(1, 0): 1, (0, 1): 1, (1, 1): 1})
    with pytest.raises(CatoError):
        coefficient_valuations(u, (1, 1), module, 5)
    with pytest.raises(DepthError):
        coefficient_valuations(u, (1, 0), module, 5, nmax=6)
