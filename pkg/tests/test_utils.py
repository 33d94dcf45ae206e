import math
from fractions import Fraction

import pytest
from sympy import Matrix, Rational

from cato_wds.errors import CatoError
from cato_wds.utils.linalg import nilpotent_exp, nullspace, row_basis, solve_particular, to_matrix, unipotent_log
from cato_wds.utils.rational import (format_fraction, format_vector, parse_fraction, parse_int_vector,
                                     parse_vector, to_fraction, vp)


def test_parse_and_format():
    assert parse_fraction(' 3/6 ') == Fraction(1, 2)
    assert parse_vector('0,1/2,-3') == (0, Fraction(1, 2), -3)
    assert parse_int_vector('1,2') == (1, 2)
    assert format_fraction(Fraction(4, 2)) == '2'
    assert format_vector([Fraction(-1, 3), 0]) == ['-1/3', '0']
    for text in ('', 'a', '1/0'):
        with pytest.raises(CatoError):
            parse_vector(text)
    with pytest.raises(CatoError):
        parse_int_vector('1/2,1')


def test_vp():
    assert vp(Fraction(3, 4), 2) == -2
    assert vp(-50, 5) == 2
    assert vp(7, 5) == 0
    assert vp(0, 3) == math.inf


def test_to_fraction():
    assert to_fraction(Rational(-2, 6)) == Fraction(-1, 3)


def test_row_basis_and_nullspace():
    m = to_matrix([[1, 2], [2, 4]])
    reduced, pivots = row_basis(m)
    assert reduced == Matrix([[1, 2]])
    assert pivots == (0,)
    assert len(nullspace(m)) == 1
    assert len(nullspace(to_matrix([], 3))) == 3
    assert row_basis(to_matrix([], 2))[1] == ()


def test_solve_particular():
    a = to_matrix([[1, 1]])
    b = to_matrix([[3]])
    assert a * solve_particular(a, b) == b


def test_exp_log_inverse():
    n = Matrix([[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    assert unipotent_log(nilpotent_exp(n)) == n
