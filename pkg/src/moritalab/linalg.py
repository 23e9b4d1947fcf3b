"""Exact dense linear algebra over prime fields GF(p).

Matrices are numpy integer arrays with entries reduced mod p.  A linear map
from a space of dimension s to one of dimension t is a (t, s) array acting on
column vectors, so composition is plain matrix multiplication.  Vectorised
tensors follow the same convention: the pure tensor e_i (x) e_j of two spaces
of dimensions m and n sits at index i*n + j, matching ``numpy.kron``.

Pivots are always the first nonzero entry in column order, so every reduced
form, kernel basis, and quotient projection is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .report import MoritaLabError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Prime field GF(p); elements are canonical residues 0..p-1."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"field order must be prime, got {self.p}")


def reduce_mod(a, p: int) -> np.ndarray:
    """Return ``a`` as an int64 array with entries reduced into 0..p-1."""
    return np.asarray(a, dtype=np.int64) % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def inv_scalar(a: int, p: int) -> int:
    """Multiplicative inverse in GF(p) via Fermat; ``a`` must be nonzero mod p."""
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return pow(a, p - 2, p)


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int], int]:
    """Reduced row echelon form over GF(p).

    Args:
        m: integer matrix, any shape including zero rows or columns.
        p: prime modulus.

    Returns:
        (reduced matrix, pivot column indices, rank).
    """
    r = reduce_mod(m, p).copy()
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        pivot_row = row + int(nz[0])
        if pivot_row != row:
            r[[row, pivot_row]] = r[[pivot_row, row]]
        r[row] = (r[row] * inv_scalar(r[row, col], p)) % p
        other = np.nonzero(r[:, col])[0]
        other = other[other != row]
        if other.size:
            r[other] = (r[other] - np.outer(r[other, col], r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots, len(pivots)


def rank(m: np.ndarray, p: int) -> int:
    return rref(m, p)[2]


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right null space, one vector per row.

    The basis is in the standard echelon parameterisation: one vector per
    free column, deterministic given the matrix.  Shape (nullity, cols).
    """
    m = reduce_mod(m, p)
    cols = m.shape[1]
    r, pivots, rk = rref(m, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(len(free), cols)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for row_idx, pc in enumerate(pivots):
            basis[k, pc] = (-int(r[row_idx, fc])) % p
    return basis


def image_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Basis of the column space, one vector per row: the pivot columns of m.

    Shape (rank, rows(m)).
    """
    m = reduce_mod(m, p)
    _, pivots, _ = rref(m, p)
    return m[:, pivots].T.copy()


def solve(m: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """Solve m @ x = rhs over GF(p); None if inconsistent.

    ``rhs`` may be a vector or a matrix of stacked right-hand sides; the
    particular solution sets all free variables to zero.
    """
    m = reduce_mod(m, p)
    rhs = reduce_mod(rhs, p)
    vector_rhs = rhs.ndim == 1
    if vector_rhs:
        rhs = rhs.reshape(-1, 1)
    rows, cols = m.shape
    if rhs.shape[0] != rows:
        raise MoritaLabError(
            f"solve: shape mismatch, matrix has {rows} rows, rhs has {rhs.shape[0]}")
    aug = np.hstack([m, rhs])
    r, pivots, _ = rref(aug, p)
    if any(pc >= cols for pc in pivots):
        return None
    x = zeros(cols, rhs.shape[1])
    for row_idx, pc in enumerate(pivots):
        x[pc] = r[row_idx, cols:]
    return x[:, 0] if vector_rhs else x


def inverse(m: np.ndarray, p: int) -> np.ndarray | None:
    m = reduce_mod(m, p)
    if m.shape[0] != m.shape[1]:
        return None
    return solve(m, eye(m.shape[0]), p)


def quotient_data(m: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Projection and section for the cokernel of ``m``.

    For m: k^s -> k^t this produces pi: k^t -> k^q with kernel exactly the
    column space of m, together with a section sigma (t, q) satisfying
    pi @ sigma = identity.  The section columns are standard basis vectors,
    chosen deterministically in index order.

    Returns:
        (projection (q, t), section (t, q), q).
    """
    m = reduce_mod(m, p)
    t = m.shape[0]
    im = image_basis(m, p)              # (r, t) rows
    r = im.shape[0]
    chosen: list[int] = []
    current = im.T                      # columns span the image
    current_rank = r
    for j in range(t):
        if current_rank == t:
            break
        cand = np.hstack([current, eye(t)[:, [j]]])
        if rank(cand, p) > current_rank:
            chosen.append(j)
            current = cand
            current_rank += 1
    q = t - r
    assert len(chosen) == q, "complement extension failed"
    basis = np.hstack([im.T, eye(t)[:, chosen]]) if r else eye(t)[:, chosen]
    if basis.shape[1] == 0:
        return zeros(0, t), zeros(t, 0), 0
    binv = inverse(basis, p)
    assert binv is not None
    projection = binv[r:, :]
    section = eye(t)[:, chosen]
    return projection, section, q


def cokernel(m: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    """Cokernel of m: the projection k^t -> k^t/im(m) and the quotient dimension."""
    projection, _, q = quotient_data(m, p)
    return projection, q


def kron(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Kronecker product reduced mod p; index (i, j) -> i * cols(b) + j."""
    return np.kron(reduce_mod(a, p), reduce_mod(b, p)) % p


def vec(m: np.ndarray) -> np.ndarray:
    """Row-major vectorisation."""
    return np.asarray(m, dtype=np.int64).reshape(-1)


def coords_in_span(basis: list[np.ndarray], target: np.ndarray, p: int) -> np.ndarray | None:
    """Coordinates of ``target`` in the span of ``basis`` matrices, or None.

    All matrices must share one shape; the stacked vec system is solved with
    the deterministic particular solution.
    """
    if not basis:
        return zeros(0, 1)[:, 0] if not np.any(reduce_mod(target, p)) else None
    stacked = np.stack([vec(b) for b in basis], axis=1) % p
    return solve(stacked, vec(target), p)


def operator_matrix(fn, source_dim: int, target_dim: int, p: int) -> np.ndarray:
    """Matrix of a linear map given as a callable on coordinate vectors.

    ``fn`` receives each standard basis vector and must return the image
    vector of length ``target_dim``.
    """
    out = zeros(target_dim, source_dim)
    for j in range(source_dim):
        e = zeros(source_dim, 1)[:, 0]
        e[j] = 1
        out[:, j] = reduce_mod(fn(e), p)
    return out
