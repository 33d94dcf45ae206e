from fractions import Fraction

import pytest

from cato_wds.errors import CatoError, HypothesisError, TableMismatchError
from cato_wds.lie.chevalley import (Generator, ad_power, bracket, build_table, divided_ad_power,
                                    k0_and_unit)
from cato_wds.lie.rootsys import SUPPORTED_TYPES, build_root_system

JACOBI_TYPES = [pytest.param(t, marks=pytest.mark.slow) if t == 'F4' else t for t in SUPPORTED_TYPES]


def test_table_is_cached(a2, table_a2):
    assert build_table(a2) is table_a2


@pytest.mark.parametrize('type_label', SUPPORTED_TYPES)
def test_structure_constant_magnitudes(type_label):
    assert build_table(build_root_system(type_label)).check_magnitudes() == []


@pytest.mark.parametrize('type_label', SUPPORTED_TYPES)
def test_divided_powers_stay_integral(type_label):
    assert build_table(build_root_system(type_label)).check_divided_powers() == []


@pytest.mark.parametrize('type_label', JACOBI_TYPES)
def test_jacobi(type_label):
    assert build_table(build_root_system(type_label)).check_jacobi() == []


def test_extraspecial_sign(table_a2, table_g2):
    alpha, beta = table_a2.extraspecial[(1, 1)]
    assert (alpha, beta) == ((1, 0), (0, 1))
    assert table_a2.structure_constant(alpha, beta) == 1
    for xi, (a, b) in table_g2.extraspecial.items():
        r, _ = table_g2.rs.root_string(a, b)
        assert table_g2.structure_constant(a, b) == r + 1


def test_cartan_brackets(table_a1):
    x, y, h = table_a1.x((1,)), table_a1.y((1,)), table_a1.h(0)
    assert bracket(x, y) == h
    assert bracket(h, x) == x * 2
    assert bracket(h, y) == y * -2


def test_bracket_antisymmetric(table_b2):
    for g in table_b2.basis:
        a = table_b2.element(g)
        assert bracket(a, a).is_zero()
        for k in table_b2.basis:
            b = table_b2.element(k)
            assert bracket(a, b) == -bracket(b, a)


def test_bracket_table_mismatch(table_a1, table_a2):
    with pytest.raises(TableMismatchError):
        bracket(table_a1.x((1,)), table_a2.x((1, 0)))


def test_coroot_of_long_and_short(table_b2):
    assert table_b2.coroot((1, 0)) == {Generator('h', 0): Fraction(1)}
    # (1,1) is short in B2: h = 2·h_1 + h_2
    assert table_b2.coroot((1, 1)) == {Generator('h', 0): Fraction(2), Generator('h', 1): Fraction(1)}


def test_labels_round_trip(table_a2):
    for g in table_a2.basis:
        assert table_a2.parse_label(table_a2.label(g)) == g
    assert table_a2.label(Generator('y', 2)) == 'y[1,1]'
    with pytest.raises(CatoError):
        table_a2.parse_label('z[1,0]')


def test_divided_ad_power(table_a2, table_g2):
    z = table_a2.y((1, 1))
    assert divided_ad_power((1, 0), 0, z) == z
    # string exhaustion
    assert divided_ad_power((1, 0), 3, z).is_zero()
    w = table_g2.y((3, 2))
    for i in range(5):
        assert divided_ad_power((0, 1), i, w).is_integral()


def test_ad_power_rejects_negative(table_a2):
    with pytest.raises(CatoError):
        ad_power(table_a2.x((1, 0)), -1, table_a2.y((1, 1)))


def test_k0_and_unit(table_a2, table_g2, table_b2):
    k0, c = k0_and_unit(table_a2, 0, (1, 1), 5)
    assert (k0, abs(c)) == (1, 1)
    assert k0_and_unit(table_g2, 0, (3, 1), 5)[0] == 3
    k0, c = k0_and_unit(table_b2, 1, (1, 2), 3)
    assert k0 == 2
    assert c % 2


def test_k0_and_unit_requires_hypothesis(table_b2):
    with pytest.raises(HypothesisError):
        k0_and_unit(table_b2, 1, (1, 2), 2)


def test_adjoint_matrix_is_homomorphism(table_a2):
    x, y = table_a2.x((1, 0)), table_a2.y((1, 1))
    left = table_a2.adjoint_matrix(bracket(x, y))
    ax, ay = table_a2.adjoint_matrix(x), table_a2.adjoint_matrix(y)
    assert left == ax * ay - ay * ax


def test_vector_round_trip(table_a2):
    z = table_a2.x((1, 1)) * Fraction(1, 3) - table_a2.h(1)
    assert table_a2.from_vector(table_a2.to_vector(z)) == z


def test_to_json_lists_extraspecial(table_g2):
    data = table_g2.to_json()
    assert data['type'] == 'G2'
    assert len(data['extraspecial']) == 4
    assert all(entry['sign'] == 1 for entry in data['extraspecial'])
