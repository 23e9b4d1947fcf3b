import numpy as np
import pytest

from moritalab.algebra import (
    LEFT,
    Bimodule,
    FieldSpec,
    Module,
    is_isomorphic,
)
from moritalab.report import AlgebraMismatchError
from moritalab.tensor import hom_over_algebra, tensor_over_algebra, tor_one_dimension


def simple_a(e2):
    return Module(e2.algebra_a, LEFT, 1,
                  np.array([[[1]], [[0]]], dtype=np.int64), name="k")


def test_tensor_with_regular_recovers_the_bimodule(e2):
    reg = e2.algebra_a.regular_module(LEFT)
    t = tensor_over_algebra(e2.m, reg)
    assert t.module.dim == e2.m.dim
    assert is_isomorphic(t.module, e2.m.as_left_module) is not None


def test_tensor_with_the_simple_collapses_the_radical(e2):
    t = tensor_over_algebra(e2.m, simple_a(e2))
    assert t.module.dim == 1
    assert t.module.algebra is e2.algebra_b


def test_zero_bimodule_tensors_to_zero(e2):
    y = e2.algebra_b.regular_module(LEFT)
    t = tensor_over_algebra(e2.n, y)
    assert t.module.dim == 0


def test_tensor_projection_section_are_mutually_inverse(e1):
    t = tensor_over_algebra(e1.m, e1.algebra_a.regular_module(LEFT))
    composed = (t.projection @ t.section) % 2
    assert np.array_equal(composed, np.eye(t.module.dim, dtype=np.int64))


def test_side_mismatch_is_rejected(e2):
    right_reg = e2.algebra_a.regular_module("right")
    with pytest.raises(AlgebraMismatchError):
        tensor_over_algebra(e2.m, right_reg)


def test_hom_out_of_the_regular_bimodule(e2):
    # Hom over B of M into a left B-module; M is free of rank 2 over B = k
    y = e2.algebra_b.regular_module(LEFT)
    h = hom_over_algebra(e2.m, y)
    assert h.module.dim == 2
    assert h.module.algebra is e2.algebra_a
    assert h.module.side == LEFT


def test_tor_detects_the_nonflat_simple(e2):
    a = e2.algebra_a
    one = np.array([[1]], dtype=np.int64)
    zero = np.array([[0]], dtype=np.int64)
    k_as_right_bimodule = Bimodule(e2.algebra_b, a, 1, np.stack([one]),
                                   np.stack([one, zero]), name="k-line")
    assert tor_one_dimension(k_as_right_bimodule, simple_a(e2)) == 1
    assert tor_one_dimension(k_as_right_bimodule,
                             a.regular_module(LEFT)) == 0


def test_tor_vanishes_over_the_semisimple_fixture(e1):
    from moritalab.enumeration import enumerate_modules
    for x in enumerate_modules(e1.algebra_a, LEFT, 2):
        assert tor_one_dimension(e1.m, x) == 0
