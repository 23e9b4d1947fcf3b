"""Glued rings, tuple modules, and the pack/unpack dictionary."""

import numpy as np
import pytest

from moritalab.algebra import LEFT, Module, dual_module, hom_space
from moritalab.enumeration import enumerate_delta_modules
from moritalab.functors import induce_from_a
from moritalab.morita import (
    DeltaModuleMap,
    MoritaContext,
    delta_direct_sum,
    delta_dual,
    delta_hom_space,
    delta_is_isomorphic,
    is_injective_delta,
    is_projective_delta,
    pack,
    unpack,
    zero_delta_module,
)
from moritalab.report import ValidationError


def test_glued_dimensions(e0, e1, e2):
    assert e0.delta.dim == 2
    assert e1.delta.dim == 6
    assert e2.delta.dim == 5


def test_nonvanishing_bimodule_product_is_rejected(e2):
    one = np.array([[1]], dtype=np.int64)
    zero = np.array([[0]], dtype=np.int64)
    from moritalab.algebra import Bimodule
    n_bad = Bimodule(e2.algebra_a, e2.algebra_b, 1,
                     np.stack([one, zero]), np.stack([one]), name="bad-n")
    with pytest.raises(ValidationError, match="vanish"):
        MoritaContext(e2.algebra_a, e2.algebra_b, e2.m, n_bad, name="broken")


def test_pack_unpack_round_trip_on_the_regular_tuple(ws_e2):
    v = ws_e2.tuples["Delta"]
    back = unpack(pack(v), v.context)
    assert delta_is_isomorphic(v, back) is not None


def test_pack_unpack_round_trip_exhaustive_small(e1):
    for v in enumerate_delta_modules(e1, LEFT, 1):
        assert delta_is_isomorphic(v, unpack(pack(v), e1)) is not None


def test_packed_dimension_is_the_component_sum(ws_e2):
    v = ws_e2.tuples["Delta"]
    assert pack(v).dim == v.x.dim + v.y.dim


def test_dual_flips_side_and_doubles_back(e2):
    for v in enumerate_delta_modules(e2, LEFT, 1):
        dual = delta_dual(v)
        assert dual.side != v.side
        assert delta_is_isomorphic(v, delta_dual(dual)) is not None


def test_dual_commutes_with_pack(e2):
    for v in enumerate_delta_modules(e2, LEFT, 1):
        via_tuple = delta_dual(v)
        via_packed = unpack(dual_module(pack(v)), e2)
        assert delta_is_isomorphic(via_tuple, via_packed) is not None


def test_tuple_homs_match_packed_homs(e2):
    pool = enumerate_delta_modules(e2, LEFT, 1)
    for u in pool:
        for v in pool:
            tuple_side = len(delta_hom_space(u, v))
            packed_side = len(hom_space(pack(u), pack(v)))
            assert tuple_side == packed_side


def test_direct_sum_components_and_projections(e2, ws_e2):
    v = ws_e2.tuples["Delta"]
    w = zero_delta_module(e2, LEFT)
    total, injections, projections = delta_direct_sum([v, w, v])
    assert total.x.dim == 2 * v.x.dim
    assert total.y.dim == 2 * v.y.dim
    round_trip = projections[0].compose(injections[0])
    assert np.array_equal(round_trip.a_matrix, np.eye(v.x.dim, dtype=np.int64))
    assert np.array_equal(round_trip.b_matrix, np.eye(v.y.dim, dtype=np.int64))
    crossed = projections[2].compose(injections[0])
    assert crossed.is_zero()


def test_regular_tuple_is_projective(ws_e0, ws_e1, ws_e2):
    for ws in (ws_e0, ws_e1, ws_e2):
        assert is_projective_delta(ws.tuples["Delta"])


def test_injectivity_of_the_regular_tuple(ws_e0, ws_e1):
    # the zero-bimodule glue of two copies of k is semisimple, so its
    # regular module is injective; gluing k x k through nonzero bimodules
    # produces a radical-square-zero ring that is not self-injective
    assert is_injective_delta(ws_e0.tuples["Delta"])
    assert not is_injective_delta(ws_e1.tuples["Delta"])


def test_structure_square_violation_is_rejected(e2):
    simple = Module(e2.algebra_a, LEFT, 1,
                    np.array([[[1]], [[0]]], dtype=np.int64))
    ta = induce_from_a(e2, simple)
    good = DeltaModuleMap(ta, ta, np.eye(1, dtype=np.int64),
                          np.eye(ta.y.dim, dtype=np.int64))
    assert not good.is_zero()
    with pytest.raises(ValidationError):
        DeltaModuleMap(ta, ta, np.eye(1, dtype=np.int64),
                       np.zeros((ta.y.dim, ta.y.dim), dtype=np.int64))
