"""Tensor products over an algebra, hom modules, and first Tor.

The tensor product of a right structure and a left structure over a shared
algebra is realised as an explicit quotient of the plain GF(p) tensor space:
relations are the columns of rho_first(b) (x) I - I (x) lambda_second(b) over
the shared basis.  Each product keeps its projection and section so maps can
be defined on plain tensors and pushed down, and so pure tensors have
computable coordinates.

Index convention: the plain tensor basis is ordered (i, j) -> i * dim2 + j,
matching numpy's kron.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .algebra import (LEFT, RIGHT, Algebra, Bimodule, Module, ModuleMap,
                      field_algebra, free_cover, kernel_module)
from .report import AlgebraMismatchError, InternalCheckError, ValidationError


@dataclass(eq=False)
class TensorModule:
    """A tensor product over an algebra together with its quotient data."""

    first: object               # Bimodule or right Module
    second: object              # Bimodule or left Module
    shared: Algebra             # the algebra tensored over
    module: Module              # the quotient, with its inherited action
    projection: np.ndarray      # (dim, dim1 * dim2)
    section: np.ndarray         # (dim1 * dim2, dim)
    relations: np.ndarray       # (dim1 * dim2, r) column basis of the relation space
    dims: tuple[int, int]

    @property
    def p(self) -> int:
        return self.module.p

    @property
    def dim(self) -> int:
        return self.module.dim

    def pure(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Coordinates of the pure tensor u (x) v."""
        d1, d2 = self.dims
        u = la.reduce_mod(np.asarray(u).reshape(d1), self.p)
        v = la.reduce_mod(np.asarray(v).reshape(d2), self.p)
        return (self.projection @ np.kron(u, v)) % self.p

    def lift(self, coords: np.ndarray) -> np.ndarray:
        """A plain-tensor representative of a quotient element."""
        return (self.section @ la.reduce_mod(np.asarray(coords), self.p)) % self.p


def _right_action_of(obj) -> tuple[Algebra, np.ndarray, int]:
    if isinstance(obj, Bimodule):
        return obj.right_algebra, obj.right_actions, obj.dim
    if isinstance(obj, Module):
        if obj.side != RIGHT:
            raise AlgebraMismatchError("first tensor factor must be right-sided")
        return obj.algebra, obj.actions, obj.dim
    raise TypeError(f"cannot tensor a {type(obj).__name__}")


def _left_action_of(obj) -> tuple[Algebra, np.ndarray, int]:
    if isinstance(obj, Bimodule):
        return obj.left_algebra, obj.left_actions, obj.dim
    if isinstance(obj, Module):
        if obj.side != LEFT:
            raise AlgebraMismatchError("second tensor factor must be left-sided")
        return obj.algebra, obj.actions, obj.dim
    raise TypeError(f"cannot tensor a {type(obj).__name__}")


# Products are immutable, so repeated requests for the same pair of factor
# objects can share one result; the values keep the factors alive, which makes
# the id-based key safe.
_TENSOR_CACHE: dict[tuple[int, int], "TensorModule"] = {}


def tensor_over_algebra(first, second) -> TensorModule:
    """Tensor product first (x)_A second.

    ``first`` contributes a right A-action and ``second`` a left A-action;
    the residual action on the quotient depends on what else survives:

    * Bimodule (x) left module  -> left module over the bimodule's left algebra
    * right module (x) Bimodule -> right module over the bimodule's right algebra
    * right module (x) left module, or Bimodule (x) Bimodule
                                -> plain space (module over the field)
    """
    key = (id(first), id(second))
    cached = _TENSOR_CACHE.get(key)
    if cached is not None and cached.first is first and cached.second is second:
        return cached
    alg1, rho, d1 = _right_action_of(first)
    alg2, lam, d2 = _left_action_of(second)
    if alg1 is not alg2:
        raise AlgebraMismatchError(
            "tensor factors act through different algebras "
            f"({alg1.name!r} vs {alg2.name!r})")
    shared = alg1
    p = shared.p
    plain = d1 * d2
    if plain:
        rel_blocks = [(la.kron(rho[i], la.eye(d2), p)
                       - la.kron(la.eye(d1), lam[i], p)) % p
                      for i in range(shared.dim)]
        rel = np.hstack(rel_blocks)
    else:
        rel = la.zeros(plain, 0)
    projection, section, q = la.quotient_data(rel, p)
    relations = la.image_basis(rel, p).T.copy()

    if isinstance(first, Bimodule) and isinstance(second, Module):
        out_alg, out_side = first.left_algebra, LEFT
        ambient = [la.kron(first.left_actions[i], la.eye(d2), p)
                   for i in range(out_alg.dim)]
    elif isinstance(first, Module) and isinstance(second, Bimodule):
        out_alg, out_side = second.right_algebra, RIGHT
        ambient = [la.kron(la.eye(d1), second.right_actions[i], p)
                   for i in range(out_alg.dim)]
    else:
        out_alg, out_side = field_algebra(shared.field), LEFT
        ambient = [la.kron(la.eye(d1), la.eye(d2), p)]

    acts = np.stack([(projection @ amb @ section) % p for amb in ambient]) \
        .reshape(out_alg.dim, q, q)
    name = f"({_describe(first)} (x) {_describe(second)})"
    module = Module(out_alg, out_side, q, acts, name=name)
    result = TensorModule(first, second, shared, module, projection, section,
                          relations, (d1, d2))
    _TENSOR_CACHE[key] = result
    return result


def _describe(obj) -> str:
    if isinstance(obj, Bimodule):
        return obj.name or "<bimodule>"
    return obj.describe()


def factor_through(tm: TensorModule, plain: np.ndarray, check: bool = True) -> np.ndarray:
    """Push a map defined on plain tensor coordinates down to the quotient.

    ``plain`` has shape (target_dim, dim1 * dim2) and must vanish on the
    relation space; the induced matrix has shape (target_dim, tm.dim).
    """
    p = tm.p
    plain = la.reduce_mod(plain, p)
    if plain.shape[1] != tm.dims[0] * tm.dims[1]:
        raise ValidationError(
            f"plain map has {plain.shape[1]} columns, ambient space has "
            f"{tm.dims[0] * tm.dims[1]}")
    induced = (plain @ tm.section) % p
    if check and np.any((induced @ tm.projection - plain) % p):
        raise ValidationError("plain map does not vanish on the tensor relations")
    return induced


def tensor_map(tm_source: TensorModule, tm_target: TensorModule,
               first_matrix: np.ndarray, second_matrix: np.ndarray) -> ModuleMap:
    """The induced map between tensor products from maps of both factors.

    The factor maps must intertwine the shared-algebra actions; that is not
    re-checked here, but the induced matrix is verified to respect relations
    and the module structure (ModuleMap construction fails otherwise).
    """
    p = tm_source.p
    plain = la.kron(la.reduce_mod(first_matrix, p), la.reduce_mod(second_matrix, p), p)
    descended = (tm_target.projection @ plain) % p
    if np.any((descended @ tm_source.relations) % p):
        raise InternalCheckError("factor maps do not carry relations into relations")
    matrix = (descended @ tm_source.section) % p
    return ModuleMap(tm_source.module, tm_target.module, matrix)


@dataclass(eq=False)
class HomModule:
    """Hom over an algebra out of a bimodule, with the leftover action.

    For an (A,B)-bimodule N and a left A-module X, hom collects the left
    A-maps N -> X; b acts by precomposition with right multiplication, making
    it a left B-module.  Mirrored for right modules into the right side.
    """

    source: Bimodule
    target: Module
    module: Module
    basis: list[np.ndarray]     # matrices (target.dim, source.dim)

    @property
    def p(self) -> int:
        return self.module.p

    @property
    def dim(self) -> int:
        return self.module.dim

    def matrix_of(self, coords: np.ndarray) -> np.ndarray:
        out = la.zeros(self.target.dim, self.source.dim)
        for c, mat in zip(la.reduce_mod(np.asarray(coords), self.p), self.basis):
            out = (out + int(c) * mat) % self.p
        return out

    def coords_of(self, matrix: np.ndarray) -> np.ndarray:
        vecs = [la.vec(m) for m in self.basis]
        coords = la.coords_in_span(vecs, la.vec(la.reduce_mod(matrix, self.p)), self.p)
        if coords is None:
            raise ValidationError("matrix is not a module map in this hom space")
        return coords


# Same identity-keyed memo as the tensor cache above.
_HOM_CACHE: dict[tuple[int, int], "HomModule"] = {}


def hom_over_algebra(source: Bimodule, target: Module) -> HomModule:
    """Hom_A(source, target) with its residual one-sided action.

    ``target.side`` selects the variant: a left module over the bimodule's
    left algebra yields a left module over its right algebra, and a right
    module over the right algebra yields a right module over the left one.
    """
    from .algebra import hom_space

    key = (id(source), id(target))
    cached = _HOM_CACHE.get(key)
    if cached is not None and cached.source is source and cached.target is target:
        return cached
    if target.side == LEFT:
        if target.algebra is not source.left_algebra:
            raise AlgebraMismatchError("target is not a left module over the bimodule's left algebra")
        inner = source.as_left_module
        residual_alg = source.right_algebra
        twist = source.right_actions
    else:
        if target.algebra is not source.right_algebra:
            raise AlgebraMismatchError("target is not a right module over the bimodule's right algebra")
        inner = source.as_right_module
        residual_alg = source.left_algebra
        twist = source.left_actions

    maps = hom_space(inner, target)
    basis = [m.matrix for m in maps]
    h = len(basis)
    vecs = [la.vec(m) for m in basis]
    p = target.p
    acts = np.zeros((residual_alg.dim, h, h), dtype=np.int64)
    for i in range(residual_alg.dim):
        for k, mat in enumerate(basis):
            moved = (mat @ twist[i]) % p
            coords = la.coords_in_span(vecs, la.vec(moved), p)
            if coords is None:
                raise InternalCheckError("hom action left the hom space")
            acts[i, :, k] = coords
    name = f"Hom({source.name or '<bimodule>'}, {target.describe()})"
    module = Module(residual_alg, target.side, h, acts, name=name)
    result = HomModule(source, target, module, basis)
    _HOM_CACHE[key] = result
    return result


def tor_one_dimension(first, second: Module) -> int:
    """Dimension of Tor_1 over the shared algebra.

    Computed from the canonical free presentation of the second argument:
    Tor_1(first, second) is the kernel of first (x) K -> first (x) F.
    """
    free, eps = free_cover(second)
    K, incl = kernel_module(eps)
    t_K = tensor_over_algebra(first, K)
    t_F = tensor_over_algebra(first, free)
    d1 = t_K.dims[0]
    induced = tensor_map(t_K, t_F, la.eye(d1), incl.matrix)
    return t_K.dim - la.rank(induced.matrix, t_K.p)
