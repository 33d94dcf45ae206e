from fractions import Fraction

import pytest
from sympy import Matrix

from cato_wds.errors import CatoError, DepthError
from cato_wds.lie.chevalley import Generator
from cato_wds.lie.pbw import algebra_for
from cato_wds.lie.rootsys import Weight
from cato_wds.modules.modules_o import (FormalVector, LocAnCharacter, act, acts_locally_finitely, build_verma,
                                        check_lemma1, check_lemma2_vanishing, dot_action, hom_dim_verma,
                                        injectivity_check, is_maximal_parabolic, lex_minimal_injectivity,
                                        local_finiteness_check, reflection_dot_action, simple_quotient,
                                        singular_vectors, up_ordering, up_ordering_la)

W = Weight.parse


# ---- weight spaces ----
def test_verma_dims_a1(table_a1):
    module = build_verma(W('2'), 4, table_a1)
    assert module.dims() == {(k,): 1 for k in range(5)}


def test_verma_dims_a2(table_a2):
    module = build_verma(W('1/3,-2'), 4, table_a2)
    assert module.dim((1, 1)) == 2
    assert module.dim((2, 2)) == 3
    assert module.dim((5, 0)) == 0
    assert module.basis((1, 1)) == [(1, 1, 0), (0, 0, 1)]


def test_depth_cap(table_a1):
    with pytest.raises(DepthError):
        build_verma(W('0'), 99, table_a1)
    with pytest.raises(CatoError):
        build_verma(W('0,0'), 3, table_a1)


def test_offsets_sorted_by_height(table_a2):
    offsets = build_verma(W('0,0'), 2, table_a2).offsets()
    assert offsets[0] == (0, 0)
    assert [sum(o) for o in offsets] == sorted(sum(o) for o in offsets)
    assert len(offsets) == 6


def test_simple_trivial_module(table_a1):
    module = simple_quotient(W('0'), 5, table_a1)
    assert module.dims() == {(0,): 1, (1,): 0, (2,): 0, (3,): 0, (4,): 0, (5,): 0}


def test_simple_finite_dimensional(table_a1, table_a2):
    assert list(simple_quotient(W('2'), 5, table_a1).dims().values()) == [1, 1, 1, 0, 0, 0]
    adjoint = simple_quotient(W('1,1'), 4, table_a2)
    assert sum(adjoint.dims().values()) == 8


def test_simple_partial_parabolic(table_a2):
    module = simple_quotient(W('0,1/2'), 3, table_a2)
    assert module.dim((1, 0)) == 0
    assert module.dim((0, 1)) == 1
    assert module.dim((1, 1)) == 1


def test_irreducible_verma(table_a1):
    verma = build_verma(W('1/2'), 6, table_a1)
    simple = simple_quotient(W('1/2'), 6, table_a1)
    assert verma.dims() == simple.dims()


def test_contravariant_gram_rank(table_a2):
    lam = W('0,1/2')
    verma = build_verma(lam, 3, table_a2)
    simple = simple_quotient(lam, 3, table_a2)
    for offset in verma.offsets():
        gram = verma.contravariant_gram(offset)
        rank = Matrix(gram).rank() if gram else 0
        assert rank == simple.dim(offset)


# ---- actions ----
def test_h_acts_by_weight(table_a2):
    lam = W('1/2,3')
    module = build_verma(lam, 3, table_a2)
    vec = module.monomial_vector((1, 0, 1))
    image = module.apply(Generator('h', 1), vec)
    mu = module.weight_at((2, 1))
    assert image == vec * mu[1]


def test_pbw_action_matches_word(table_a2):
    module = build_verma(W('1/3,1/5'), 4, table_a2)
    algebra = algebra_for(table_a2)
    v = module.highest_weight_vector()
    word = (Generator('x', 0), Generator('y', 1), Generator('y', 0), Generator('y', 0))
    direct = v
    for g in reversed(word):
        direct = module.apply(g, direct)
    assert module.apply_pbw(algebra.normal_order(word), v) == direct


def test_act_dispatches_on_element_kind(table_a2):
    module = build_verma(W('1/3,1/5'), 4, table_a2)
    algebra = algebra_for(table_a2)
    v = module.highest_weight_vector() + module.monomial_vector((0, 1, 0))
    y1, h1 = Generator('y', 0), Generator('h', 0)
    assert act(module, y1, v) == module.apply(y1, v)
    lie = table_a2.y((1, 0)) * 2 + table_a2.h(0)
    assert act(module, lie, v) == module.apply(y1, v) * 2 + module.apply(h1, v)
    word = (Generator('x', 1), Generator('y', 0), Generator('y', 1))
    direct = v
    for g in reversed(word):
        direct = module.apply(g, direct)
    assert act(module, algebra.normal_order(word), v) == direct
    with pytest.raises(CatoError):
        act(module, 3, v)


def test_representation_property(table_a2):
    module = build_verma(W('1/2,-1/3'), 4, table_a2)
    v = module.monomial_vector((1, 1, 0)) + module.monomial_vector((0, 0, 1))
    for a in table_a2.basis:
        for b in table_a2.basis:
            ab = module.apply(a, module.apply(b, v))
            ba = module.apply(b, module.apply(a, v))
            bracket = FormalVector(module)
            for g, c in table_a2.bracket_generators(a, b).items():
                bracket = bracket + module.apply(g, v) * c
            lhs, rhs = ab - ba, bracket
            for offset in set(lhs.components) | set(rhs.components):
                if sum(offset) <= 3:
                    assert lhs.component(offset) == rhs.component(offset)


def test_apply_strict_depth(table_a1):
    module = build_verma(W('0'), 2, table_a1)
    top = module.monomial_vector((2,))
    assert module.apply(Generator('y', 0), top).is_zero()
    with pytest.raises(DepthError):
        module.apply(Generator('y', 0), top, strict=True)


def test_formal_vector_arithmetic(table_a1):
    module = build_verma(W('1/2'), 3, table_a1)
    v = module.highest_weight_vector() + module.monomial_vector((1,)) * Fraction(1, 2)
    assert (v - v).is_zero()
    assert v.support() == [(0,), (1,)]
    assert v.to_json() == {'[0]': ['1'], '[1]': ['1/2']}
    with pytest.raises(CatoError):
        module.vector((1,), [1, 2])


# ---- singular vectors and Hom ----
def test_singular_vector_a1(table_a1):
    module = build_verma(W('0'), 6, table_a1)
    found = singular_vectors(module, W('-2'))
    assert len(found) == 1
    assert found[0].support() == [(1,)]
    assert singular_vectors(module, W('0')) == [module.highest_weight_vector()]


def test_non_integral_verma_has_no_singular_vectors(table_a1):
    module = build_verma(W('1/2'), 6, table_a1)
    for offset in module.offsets()[1:]:
        assert singular_vectors(module, module.weight_at(offset)) == []


def test_singular_vectors_outside_cone(table_a1):
    module = build_verma(W('0'), 4, table_a1)
    with pytest.raises(CatoError):
        singular_vectors(module, W('2'))


def test_hom_dim_verma(table_a1):
    assert hom_dim_verma(W('-2'), W('0'), 6, table_a1) == 1
    assert hom_dim_verma(W('-3'), W('0'), 6, table_a1) == 0
    assert hom_dim_verma(W('0'), W('0'), 6, table_a1) == 1
    with pytest.raises(DepthError):
        hom_dim_verma(W('-20'), W('0'), 4, table_a1)


# ---- dot action and ordering ----
def test_dot_action(a1, a2):
    assert dot_action(a1, 0, W('0')) == W('-2')
    assert dot_action(a1, 0, W('-1')) == W('-1')
    assert dot_action(a2, 0, W('1,0')) == W('-3,2')


def test_reflection_dot_action_simple_agrees(a2, b2):
    for rs in (a2, b2):
        lam = W(','.join(['1/2', '3'][:rs.rank]))
        for i, alpha in enumerate(rs.simple_roots):
            assert reflection_dot_action(rs, alpha, lam) == dot_action(rs, i, lam)


def test_up_ordering(a1, a2):
    assert up_ordering(a1, W('-2'), W('0'))
    assert up_ordering(a1, W('0'), W('0'))
    assert not up_ordering(a1, W('1'), W('0'))
    assert up_ordering(a2, W('-2,-2'), W('0,0'))
    with pytest.raises(CatoError):
        up_ordering(a1, W('-2'), W('0'), reflections='some')


def test_up_ordering_needs_non_simple_reflection(a2):
    lam = W('1/2,1/2')
    mu = reflection_dot_action(a2, (1, 1), lam)
    assert up_ordering(a2, mu, lam)
    assert not up_ordering(a2, mu, lam, reflections='simple')


def test_up_ordering_la(a1):
    mu = LocAnCharacter(W('-2'))
    lam = LocAnCharacter(W('0'))
    assert up_ordering_la(a1, mu, lam)
    assert not up_ordering_la(a1, LocAnCharacter(W('-2'), 'sgn'), lam)
    assert up_ordering_la(a1, lam, lam)


# ---- local finiteness and injectivity ----
def test_local_finiteness(table_a1, table_a2):
    assert local_finiteness_check(simple_quotient(W('2'), 5, table_a1), 0)
    assert not local_finiteness_check(simple_quotient(W('1/2'), 5, table_a1), 0)
    module = simple_quotient(W('0,1/2'), 4, table_a2)
    assert local_finiteness_check(module, 0)
    assert not local_finiteness_check(module, 1)
    assert is_maximal_parabolic(module, [0])
    assert not is_maximal_parabolic(module, [0, 1])


def test_local_finiteness_needs_simple(table_a1):
    with pytest.raises(CatoError):
        local_finiteness_check(build_verma(W('2'), 4, table_a1), 0)


def test_acts_locally_finitely_on_verma(table_a1):
    assert not acts_locally_finitely(build_verma(W('2'), 4, table_a1), (1,))


def test_injectivity(table_a1, table_a2):
    assert injectivity_check(simple_quotient(W('1/2'), 6, table_a1), (1,))
    module = simple_quotient(W('0,1/2'), 5, table_a2)
    assert injectivity_check(module, (1, 1))
    assert injectivity_check(module, (0, 1))
    with pytest.raises(CatoError):
        injectivity_check(module, (1, 0))


# ---- commutator lemmas acting on v+ ----
def test_check_lemma1(table_a2):
    module = build_verma(W('1/2,1/3'), 6, table_a2)
    assert check_lemma1(module, table_a2.x((1, 0)), table_a2.y((1, 1)), 3)


def test_check_lemma1_preconditions(table_a1):
    module = build_verma(W('1/2'), 4, table_a1)
    with pytest.raises(CatoError):
        check_lemma1(module, table_a1.x((1,)), table_a1.y((1,)), 2)


def test_check_lemma2_vanishing(table_b2, table_g2):
    assert check_lemma2_vanishing(build_verma(W('1/2,1/3'), 6, table_b2), 1, (1, 1), 2)
    assert check_lemma2_vanishing(build_verma(W('1/2,1/3'), 6, table_g2), 0, (2, 1), 1)
    with pytest.raises(CatoError):
        check_lemma2_vanishing(build_verma(W('0,0'), 2, table_b2), 0, (1, 1), 1)


def test_lex_minimal_injectivity(table_a2):
    module = build_verma(W('1/2,1/3'), 4, table_a2)
    element = table_a2.y((0, 1)) + table_a2.y((1, 1)) * 2
    vec = module.highest_weight_vector() + module.monomial_vector((1, 0, 0))
    result = lex_minimal_injectivity(module, element, vec)
    assert result['gamma_plus'] == [0, 1]
    assert result['nu_plus'] == [0, 1]
    assert result['matches_single_term']
    assert result['nonzero']


def test_to_json(table_a2):
    data = simple_quotient(W('0,1/2'), 2, table_a2).to_json()
    assert data['kind'] == 'simple'
    assert data['dims']['[1,0]'] == 0
    assert data['dims']['[0,1]'] == 1
