"""Exact Gaussian elimination over GF(p).

The rank-nullity scan over every 2x2 and 2x3 matrix on GF(2) is part of the
acceptance contract; the rest are property checks on random small matrices.
"""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moritalab import linalg as la


def all_matrices(rows, cols, p):
    for entries in itertools.product(range(p), repeat=rows * cols):
        yield np.array(entries, dtype=np.int64).reshape(rows, cols)


@pytest.mark.parametrize("shape", [(2, 2), (2, 3)])
def test_rank_nullity_exhaustive_gf2(shape):
    rows, cols = shape
    for m in all_matrices(rows, cols, 2):
        ker = la.kernel_basis(m, 2)
        assert la.rank(m, 2) + ker.shape[0] == cols
        if ker.shape[0]:
            assert not np.any((m @ ker.T) % 2)


def matrices(p, max_dim=4):
    dims = st.integers(0, max_dim)
    return dims.flatmap(lambda r: dims.flatmap(lambda c: st.lists(
        st.integers(0, p - 1), min_size=r * c, max_size=r * c).map(
        lambda entries: np.array(entries, dtype=np.int64).reshape(r, c))))


@settings(max_examples=60, deadline=None)
@given(m=matrices(2))
def test_rref_idempotent(m):
    reduced, pivots, rk = la.rref(m, 2)
    again, pivots2, rk2 = la.rref(reduced, 2)
    assert np.array_equal(again, reduced)
    assert (pivots, rk) == (pivots2, rk2)
    assert rk == la.rank(m, 2)


@settings(max_examples=60, deadline=None)
@given(m=matrices(3), data=st.data())
def test_solve_recovers_consistent_systems(m, data):
    x = np.array(data.draw(st.lists(st.integers(0, 2), min_size=m.shape[1],
                                    max_size=m.shape[1])), dtype=np.int64)
    rhs = (m @ x) % 3
    sol = la.solve(m, rhs, 3)
    assert sol is not None
    assert np.array_equal((m @ sol) % 3, rhs % 3)


def test_solve_reports_inconsistency():
    m = np.array([[1, 0], [0, 0]], dtype=np.int64)
    assert la.solve(m, np.array([0, 1], dtype=np.int64), 2) is None


@settings(max_examples=40, deadline=None)
@given(m=matrices(2))
def test_image_and_cokernel_dimensions(m):
    image = la.image_basis(m, 2)
    projection, q = la.cokernel(m, 2)
    assert image.shape[0] == la.rank(m, 2)
    assert q == m.shape[0] - la.rank(m, 2)
    assert projection.shape == (q, m.shape[0])
    if image.shape[0]:
        assert not np.any((projection @ image.T) % 2)


def test_inverse_round_trip():
    m = np.array([[1, 1], [0, 1]], dtype=np.int64)
    inv = la.inverse(m, 2)
    assert np.array_equal((m @ inv) % 2, np.eye(2, dtype=np.int64))


def test_kron_shape_and_vec():
    a = np.arange(4, dtype=np.int64).reshape(2, 2) % 2
    b = np.arange(6, dtype=np.int64).reshape(2, 3) % 2
    k = la.kron(a, b, 2)
    assert k.shape == (4, 6)
    assert la.vec(b).shape == (6,)


def test_coords_in_span_finds_and_rejects():
    basis = [np.array([1, 0, 0], dtype=np.int64),
             np.array([0, 1, 0], dtype=np.int64)]
    inside = np.array([1, 1, 0], dtype=np.int64)
    outside = np.array([0, 0, 1], dtype=np.int64)
    coords = la.coords_in_span(basis, inside, 2)
    assert coords is not None and np.array_equal(coords, [1, 1])
    assert la.coords_in_span(basis, outside, 2) is None
