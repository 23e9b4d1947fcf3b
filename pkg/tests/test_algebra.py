"""Algebras, bimodules, plain modules, and the splitting-based class tests."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moritalab import linalg as la
from moritalab.algebra import (
    LEFT,
    RIGHT,
    Algebra,
    Bimodule,
    FieldSpec,
    Module,
    dual_module,
    free_cover,
    hom_space,
    is_injective,
    is_isomorphic,
    is_projective,
    kernel_module,
    quotient_module,
)
from moritalab.report import ValidationError

P2 = FieldSpec(2)


def test_nonassociative_table_names_the_triple():
    st_bad = np.zeros((3, 3, 3), dtype=np.int64)
    for j in range(3):
        st_bad[0, j, j] = 1
        st_bad[j, 0, j] = 1
    st_bad[1, 1, 2] = 1   # a*a = b
    st_bad[2, 1, 1] = 1   # b*a = a, while a*b = 0
    with pytest.raises(ValidationError, match=r"associativity fails at basis "
                                              r"triple \(1, 1, 1\)"):
        Algebra(P2, 3, st_bad, np.array([1, 0, 0], dtype=np.int64), name="bad")


def test_broken_unit_is_rejected():
    table = np.ones((1, 1, 1), dtype=np.int64)
    with pytest.raises(ValidationError, match="unit fails"):
        Algebra(P2, 1, table, np.zeros(1, dtype=np.int64))


def test_invalid_right_action_is_rejected(e2):
    a, k = e2.algebra_a, e2.algebra_b
    scalar = np.stack([np.eye(2, dtype=np.int64)])
    swap = np.array([[0, 1], [1, 0]], dtype=np.int64)
    # x squares to zero in the algebra but the action matrix squares to 1
    with pytest.raises(ValidationError, match="action law fails"):
        Bimodule(k, a, 2, scalar, np.stack([np.eye(2, dtype=np.int64), swap]),
                 name="broken")


def test_noncommuting_actions_are_rejected(e1):
    kk = e1.algebra_a
    lefts = np.stack([np.array([[1, 0], [0, 0]], dtype=np.int64),
                      np.array([[0, 0], [0, 1]], dtype=np.int64)])
    rights = np.stack([np.array([[1, 0], [1, 0]], dtype=np.int64),
                       np.array([[0, 0], [1, 1]], dtype=np.int64)])
    # each one-sided law holds; the two actions do not commute
    with pytest.raises(ValidationError, match="fail to commute"):
        Bimodule(kk, kk, 2, lefts, rights, name="skew")


def test_regular_module_is_projective_not_simple_over_dual_numbers(e2):
    a = e2.algebra_a
    reg = a.regular_module(LEFT)
    assert is_projective(reg)
    simple = Module(a, LEFT, 1, np.array([[[1]], [[0]]], dtype=np.int64))
    assert not is_projective(simple)
    assert not is_injective(simple)


def test_semisimple_fixture_has_projective_simples(e1):
    kk = e1.algebra_a
    s1 = Module(kk, LEFT, 1, np.array([[[1]], [[0]]], dtype=np.int64))
    assert is_projective(s1)
    assert is_injective(s1)


def test_self_injectivity_of_dual_numbers(e2):
    reg = e2.algebra_a.regular_module(LEFT)
    assert is_injective(reg)


def test_dual_module_flips_side_and_squares_to_identity(e2):
    simple = Module(e2.algebra_a, LEFT, 1,
                    np.array([[[1]], [[0]]], dtype=np.int64), name="s")
    dual = dual_module(simple)
    assert dual.side == RIGHT
    double = dual_module(dual)
    assert double.side == LEFT
    assert is_isomorphic(simple, double) is not None


def test_hom_space_dimensions_over_dual_numbers(e2):
    a = e2.algebra_a
    reg = a.regular_module(LEFT)
    simple = Module(a, LEFT, 1, np.array([[[1]], [[0]]], dtype=np.int64))
    assert len(hom_space(reg, reg)) == 2
    assert len(hom_space(reg, simple)) == 1
    assert len(hom_space(simple, reg)) == 1
    assert len(hom_space(simple, simple)) == 1


def test_free_cover_is_epi(e2):
    simple = Module(e2.algebra_a, LEFT, 1,
                    np.array([[[1]], [[0]]], dtype=np.int64))
    free, eps = free_cover(simple)
    assert free.dim == 2
    assert la.rank(eps.matrix, 2) == simple.dim


def test_kernel_of_the_cover_is_the_radical(e2):
    a = e2.algebra_a
    simple = Module(a, LEFT, 1, np.array([[[1]], [[0]]], dtype=np.int64))
    _, eps = free_cover(simple)
    ker, incl = kernel_module(eps)
    assert ker.dim == 1
    assert is_isomorphic(ker, simple) is not None


def test_quotient_by_radical(e2):
    a = e2.algebra_a
    reg = a.regular_module(LEFT)
    rad = np.array([[0], [1]], dtype=np.int64)   # span of x
    quot, proj, section = quotient_module(reg, rad)
    assert quot.dim == 1
    assert np.array_equal((proj.matrix @ section) % 2, np.eye(1, dtype=np.int64))


def invertibles(dim):
    return st.lists(st.integers(0, 1), min_size=dim * dim,
                    max_size=dim * dim).map(
        lambda bits: np.array(bits, dtype=np.int64).reshape(dim, dim)).filter(
        lambda g: la.rank(g, 2) == dim)


@settings(max_examples=25, deadline=None)
@given(g=invertibles(2))
def test_conjugated_module_is_isomorphic(g):
    st_table = np.zeros((2, 2, 2), dtype=np.int64)
    st_table[0, 0, 0] = 1
    st_table[0, 1, 1] = 1
    st_table[1, 0, 1] = 1
    a = Algebra(P2, 2, st_table, np.array([1, 0], dtype=np.int64))
    reg = a.regular_module(LEFT)
    ginv = la.inverse(g, 2)
    twisted = Module(a, LEFT, 2, np.stack(
        [(g @ act @ ginv) % 2 for act in reg.actions]))
    assert is_isomorphic(reg, twisted) is not None
