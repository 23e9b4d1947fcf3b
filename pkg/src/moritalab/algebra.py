"""Finite-dimensional algebras over GF(p) and their one-sided modules.

An algebra is given by structure constants c[i][j][k] (the coefficient of
basis element k in the product b_i * b_j) plus the coordinates of the unit.
A module is a list of action matrices, one per algebra basis element; for a
left module the assignment b -> action(b) is multiplicative, for a right
module it reverses products.  Bimodules carry commuting actions of two
algebras.  Every object validates its defining equations at construction.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from .linalg import FieldSpec
from .report import (AlgebraMismatchError, BudgetExceededError, CheckReport,
                     InternalCheckError, ValidationError, Verdict)

LEFT = "left"
RIGHT = "right"

_ISO_SCAN_DEFAULT = 1 << 18


def _iso_budget() -> int:
    raw = os.environ.get("MORITA_ENUM_BUDGET")
    return int(raw) if raw else _ISO_SCAN_DEFAULT


def validate_algebra_data(field_spec: FieldSpec, dim: int, structure: np.ndarray,
                          unit: np.ndarray) -> CheckReport:
    """Check associativity and the two-sided unit law on raw structure data.

    The report names the first failing basis triple, which is what the
    workspace parser surfaces as a semantic diagnostic.
    """
    p = field_spec.p
    structure = la.reduce_mod(structure, p)
    unit = la.reduce_mod(unit, p)
    if structure.shape != (dim, dim, dim):
        return CheckReport("validate-algebra", Verdict.REFUTED,
                           f"structure constants must have shape {(dim, dim, dim)}, "
                           f"got {structure.shape}")
    if unit.shape != (dim,):
        return CheckReport("validate-algebra", Verdict.REFUTED,
                           f"unit vector must have length {dim}")
    lhs = np.einsum("ijl,lkm->ijkm", structure, structure) % p
    rhs = np.einsum("jkl,ilm->ijkm", structure, structure) % p
    bad = np.argwhere((lhs - rhs) % p)
    if bad.size:
        i, j, k = (int(v) for v in bad[0][:3])
        return CheckReport("validate-algebra", Verdict.REFUTED,
                           f"associativity fails at basis triple ({i}, {j}, {k})",
                           witnesses=[{"triple": [i, j, k]}])
    left_unit = np.einsum("i,ijk->jk", unit, structure) % p
    right_unit = np.einsum("j,ijk->ik", unit, structure) % p
    if not np.array_equal(left_unit, la.eye(dim)):
        j = int(np.argwhere((left_unit - la.eye(dim)) % p)[0][0])
        return CheckReport("validate-algebra", Verdict.REFUTED,
                           f"unit fails on the left at basis element {j}")
    if not np.array_equal(right_unit, la.eye(dim)):
        j = int(np.argwhere((right_unit - la.eye(dim)) % p)[0][0])
        return CheckReport("validate-algebra", Verdict.REFUTED,
                           f"unit fails on the right at basis element {j}")
    return CheckReport("validate-algebra", Verdict.PASS, f"dim {dim} over GF({p})")


@dataclass(eq=False)
class Algebra:
    """Associative unital algebra over GF(p) given by structure constants."""

    field: FieldSpec
    dim: int
    structure: np.ndarray   # (dim, dim, dim); c[i][j][k]
    unit: np.ndarray        # (dim,)
    name: str = ""

    def __post_init__(self):
        self.structure = la.reduce_mod(self.structure, self.p)
        self.unit = la.reduce_mod(self.unit, self.p)
        report = validate_algebra_data(self.field, self.dim, self.structure, self.unit)
        if report.verdict is not Verdict.PASS:
            raise ValidationError(f"algebra {self.name or '<anon>'}: {report.detail}", report)

    @property
    def p(self) -> int:
        return self.field.p

    @cached_property
    def left_mult(self) -> np.ndarray:
        """left_mult[i] is the matrix of x -> b_i * x."""
        return np.transpose(self.structure, (0, 2, 1)).copy()

    @cached_property
    def right_mult(self) -> np.ndarray:
        """right_mult[i] is the matrix of x -> x * b_i."""
        return np.transpose(self.structure, (1, 2, 0)).copy()

    def multiply(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Product of two elements given in coordinates."""
        return np.einsum("i,j,ijk->k", u % self.p, v % self.p, self.structure) % self.p

    def regular_module(self, side: str = LEFT) -> "Module":
        actions = self.left_mult if side == LEFT else self.right_mult
        return Module(self, side, self.dim, actions.copy(),
                      name=f"{self.name or 'A'}.regular.{side}")


_FIELD_ALGEBRAS: dict[int, Algebra] = {}


def field_algebra(field_spec: FieldSpec) -> Algebra:
    """The base field as a one-dimensional algebra; its modules are plain spaces.

    Cached per characteristic so identity comparisons between plain spaces work.
    """
    if field_spec.p not in _FIELD_ALGEBRAS:
        _FIELD_ALGEBRAS[field_spec.p] = Algebra(
            field_spec, 1, np.ones((1, 1, 1), dtype=np.int64),
            np.ones(1, dtype=np.int64), name="k")
    return _FIELD_ALGEBRAS[field_spec.p]


def validate_module_data(algebra: Algebra, side: str, dim: int,
                         actions: np.ndarray) -> CheckReport:
    """Check the unit law and multiplicativity of an action assignment."""
    p = algebra.p
    actions = la.reduce_mod(actions, p)
    if side not in (LEFT, RIGHT):
        return CheckReport("validate-module", Verdict.REFUTED, f"unknown side {side!r}")
    if actions.shape != (algebra.dim, dim, dim):
        return CheckReport("validate-module", Verdict.REFUTED,
                           f"actions must have shape {(algebra.dim, dim, dim)}, "
                           f"got {actions.shape}")
    unit_action = np.einsum("i,ijk->jk", algebra.unit, actions) % p
    if not np.array_equal(unit_action, la.eye(dim)):
        return CheckReport("validate-module", Verdict.REFUTED, "unit does not act as identity")
    # For b_i b_j = sum_k c[i][j][k] b_k the operator law reads
    # act(b_i) act(b_j) = sum_k c ... on the left, reversed on the right.
    if side == LEFT:
        products = np.einsum("iab,jbc->ijac", actions, actions) % p
    else:
        products = np.einsum("jab,ibc->ijac", actions, actions) % p
    expected = np.einsum("ijk,kab->ijab", algebra.structure, actions) % p
    bad = np.argwhere((products - expected) % p)
    if bad.size:
        i, j = int(bad[0][0]), int(bad[0][1])
        return CheckReport("validate-module", Verdict.REFUTED,
                           f"action law fails at basis pair ({i}, {j})",
                           witnesses=[{"pair": [i, j]}])
    return CheckReport("validate-module", Verdict.PASS, f"{side} module of dim {dim}")


@dataclass(eq=False)
class Module:
    """One-sided module over an Algebra, stored as per-basis action matrices."""

    algebra: Algebra
    side: str
    dim: int
    actions: np.ndarray     # (algebra.dim, dim, dim)
    name: str = ""

    def __post_init__(self):
        self.actions = la.reduce_mod(self.actions, self.p)
        report = validate_module_data(self.algebra, self.side, self.dim, self.actions)
        if report.verdict is not Verdict.PASS:
            raise ValidationError(f"module {self.name or '<anon>'}: {report.detail}", report)

    @property
    def p(self) -> int:
        return self.algebra.p

    def action_of(self, element: np.ndarray) -> np.ndarray:
        """Action matrix of an algebra element given in coordinates."""
        return np.einsum("i,ijk->jk", la.reduce_mod(element, self.p), self.actions) % self.p

    def describe(self) -> str:
        return self.name or f"<{self.side} module dim {self.dim} over {self.algebra.name}>"


def zero_module(algebra: Algebra, side: str) -> Module:
    return Module(algebra, side, 0, np.zeros((algebra.dim, 0, 0), dtype=np.int64),
                  name="0")


@dataclass(eq=False)
class Bimodule:
    """A (left_algebra, right_algebra)-bimodule with commuting actions."""

    left_algebra: Algebra
    right_algebra: Algebra
    dim: int
    left_actions: np.ndarray    # (left_algebra.dim, dim, dim)
    right_actions: np.ndarray   # (right_algebra.dim, dim, dim)
    name: str = ""

    def __post_init__(self):
        if self.left_algebra.p != self.right_algebra.p:
            raise AlgebraMismatchError("bimodule algebras live over different fields")
        p = self.p
        self.left_actions = la.reduce_mod(self.left_actions, p)
        self.right_actions = la.reduce_mod(self.right_actions, p)
        for side_name, alg, acts, side in (
                ("left", self.left_algebra, self.left_actions, LEFT),
                ("right", self.right_algebra, self.right_actions, RIGHT)):
            report = validate_module_data(alg, side, self.dim, acts)
            if report.verdict is not Verdict.PASS:
                raise ValidationError(
                    f"bimodule {self.name or '<anon>'} ({side_name} action): {report.detail}",
                    report)
        commute = (np.einsum("iab,jbc->ijac", self.left_actions, self.right_actions)
                   - np.einsum("jab,ibc->ijac", self.right_actions, self.left_actions)) % p
        bad = np.argwhere(commute)
        if bad.size:
            i, j = int(bad[0][0]), int(bad[0][1])
            raise ValidationError(
                f"bimodule {self.name or '<anon>'}: actions fail to commute at "
                f"basis pair ({i}, {j})")

    @property
    def p(self) -> int:
        return self.left_algebra.p

    @cached_property
    def as_left_module(self) -> Module:
        return Module(self.left_algebra, LEFT, self.dim, self.left_actions,
                      name=f"{self.name}.left")

    @cached_property
    def as_right_module(self) -> Module:
        return Module(self.right_algebra, RIGHT, self.dim, self.right_actions,
                      name=f"{self.name}.right")


@dataclass(eq=False)
class ModuleMap:
    """A homomorphism of one-sided modules, validated to intertwine the actions."""

    source: Module
    target: Module
    matrix: np.ndarray      # (target.dim, source.dim)

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra or self.source.side != self.target.side:
            raise AlgebraMismatchError("module map endpoints disagree on algebra or side")
        p = self.p
        self.matrix = la.reduce_mod(self.matrix, p)
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValidationError(
                f"map matrix shape {self.matrix.shape} != "
                f"{(self.target.dim, self.source.dim)}")
        lhs = np.einsum("ab,ibc->iac", self.matrix, self.source.actions) % p
        rhs = np.einsum("iab,bc->iac", self.target.actions, self.matrix) % p
        bad = np.argwhere((lhs - rhs) % p)
        if bad.size:
            raise ValidationError(
                f"matrix does not intertwine action of basis element {int(bad[0][0])}")

    @property
    def p(self) -> int:
        return self.source.p

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        if other.target is not self.source:
            raise AlgebraMismatchError("composition endpoints do not match")
        return ModuleMap(other.source, self.target, (self.matrix @ other.matrix) % self.p)

    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def coord_vector(self) -> np.ndarray:
        return la.vec(self.matrix)

    @classmethod
    def identity(cls, module: Module) -> "ModuleMap":
        return cls(module, module, la.eye(module.dim))


def direct_sum(modules: list[Module]) -> tuple[Module, list[ModuleMap], list[ModuleMap]]:
    """Direct sum with injection and projection witnesses.

    Returns (sum module, injections, projections) with proj[i] o inj[i] = id
    and the actions block-diagonal in the given order.
    """
    if not modules:
        raise ValueError("direct_sum of an empty list is ambiguous; pass a zero module")
    alg, side = modules[0].algebra, modules[0].side
    if any(m.algebra is not alg or m.side != side for m in modules):
        raise AlgebraMismatchError("direct sum factors disagree on algebra or side")
    total = sum(m.dim for m in modules)
    actions = np.zeros((alg.dim, total, total), dtype=np.int64)
    offset = 0
    offsets = []
    for m in modules:
        actions[:, offset:offset + m.dim, offset:offset + m.dim] = m.actions
        offsets.append(offset)
        offset += m.dim
    name = "(" + " + ".join(m.describe() for m in modules) + ")"
    total_module = Module(alg, side, total, actions, name=name)
    injections, projections = [], []
    for m, off in zip(modules, offsets):
        inj = la.zeros(total, m.dim)
        inj[off:off + m.dim, :] = la.eye(m.dim)
        injections.append(ModuleMap(m, total_module, inj))
        projections.append(ModuleMap(total_module, m, inj.T))
    return total_module, injections, projections


def hom_space(source: Module, target: Module) -> list[ModuleMap]:
    """Basis of the space of module homomorphisms source -> target.

    Solves the intertwining system act_target(b) F = F act_source(b) for all
    basis elements b; the echelon kernel basis makes the result deterministic.
    """
    if source.algebra is not target.algebra or source.side != target.side:
        raise AlgebraMismatchError("hom endpoints disagree on algebra or side")
    p = source.p
    n, m = target.dim, source.dim
    if n * m == 0:
        return []
    blocks = []
    for i in range(source.algebra.dim):
        # vec(F @ src) = (I (x) src^T) vec F ; vec(tgt @ F) = (tgt (x) I) vec F
        blocks.append((la.kron(la.eye(n), source.actions[i].T, p)
                       - la.kron(target.actions[i], la.eye(m), p)) % p)
    system = np.vstack(blocks) if blocks else la.zeros(0, n * m)
    basis_rows = la.kernel_basis(system, p)
    return [ModuleMap(source, target, row.reshape(n, m)) for row in basis_rows]


def dual_module(module: Module) -> Module:
    """GF(p)-linear dual with the opposite side; action matrices transpose."""
    transposed = np.transpose(module.actions, (0, 2, 1)).copy()
    other = RIGHT if module.side == LEFT else LEFT
    return Module(module.algebra, other, module.dim, transposed,
                  name=f"{module.describe()}^+")


def dual_map(phi: ModuleMap, dual_source: Module | None = None,
             dual_target: Module | None = None) -> ModuleMap:
    """The transpose map between the duals, contravariantly."""
    ds = dual_source if dual_source is not None else dual_module(phi.target)
    dt = dual_target if dual_target is not None else dual_module(phi.source)
    return ModuleMap(ds, dt, phi.matrix.T.copy())


def dual_bimodule(bim: Bimodule) -> Bimodule:
    """Dual of a bimodule: sides swap, actions transpose."""
    return Bimodule(bim.right_algebra, bim.left_algebra, bim.dim,
                    np.transpose(bim.right_actions, (0, 2, 1)).copy(),
                    np.transpose(bim.left_actions, (0, 2, 1)).copy(),
                    name=f"{bim.name}^+")


def _conjugation_invariants(module: Module) -> tuple:
    p = module.p
    inv = []
    for i in range(module.algebra.dim):
        act = module.actions[i]
        ranks = tuple(la.rank((act - lam * la.eye(module.dim)) % p, p)
                      for lam in range(p))
        inv.append(ranks)
    return tuple(inv)


def _batched_nonsingular(mats: np.ndarray, p: int) -> np.ndarray:
    """Boolean mask of batch entries with nonzero determinant mod p.

    Uses float LU determinants, exact for the small integer matrices handled
    here; every positive hit is re-verified exactly by the caller.
    """
    if mats.shape[1] == 0:
        return np.ones(mats.shape[0], dtype=bool)
    if mats.shape[1] > 16:
        raise BudgetExceededError("isomorphism scan dimension too large for det batch")
    dets = np.round(np.linalg.det(mats.astype(np.float64))).astype(np.int64)
    return (dets % p) != 0


def find_invertible_combination(basis_vecs: list[np.ndarray], shapes, p: int,
                                budget: int | None = None):
    """Search the span of ``basis_vecs`` for an element whose blocks are invertible.

    ``shapes`` is a list of (rows, cols, offset) block descriptors into the
    coordinate vectors; an element qualifies when every square block is
    nonsingular.  Scans all p^h combinations in numeric order under a budget,
    so the first witness found is deterministic.

    Returns the coefficient vector or None.
    """
    h = len(basis_vecs)
    for rows, cols, _ in shapes:
        if rows != cols:
            return None
    if all(rows == 0 for rows, _, _ in shapes):
        return np.zeros(h, dtype=np.int64)
    if h == 0:
        return None
    total = p ** h
    limit = budget if budget is not None else _iso_budget()
    if total > limit:
        raise BudgetExceededError(
            f"isomorphism scan of {total} combinations exceeds budget {limit}")
    stacked = np.stack(basis_vecs, axis=0) % p      # (h, veclen)
    chunk = 1 << 14
    for start in range(1, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = np.empty((idx.size, h), dtype=np.int64)
        rem = idx.copy()
        for k in range(h):
            digits[:, k] = rem % p
            rem //= p
        combos = (digits @ stacked) % p             # (n, veclen)
        ok = np.ones(idx.size, dtype=bool)
        for rows, cols, offset in shapes:
            if rows == 0:
                continue
            block = combos[:, offset:offset + rows * cols].reshape(-1, rows, cols)
            ok &= _batched_nonsingular(block, p)
        for local in np.nonzero(ok)[0]:
            coeffs = digits[local]
            good = True
            for rows, cols, offset in shapes:
                if rows == 0:
                    continue
                block = combos[local, offset:offset + rows * cols].reshape(rows, cols)
                if la.rank(block, p) != rows:
                    good = False
                    break
            if good:
                return coeffs
    return None


def is_isomorphic(x: Module, y: Module) -> ModuleMap | None:
    """An isomorphism x -> y if one exists, else None.

    Solves the intertwiner space and scans it for an invertible element;
    cheap conjugation invariants prune most mismatches first.
    """
    if x.algebra is not y.algebra or x.side != y.side:
        return None
    if x.dim != y.dim:
        return None
    if x.dim == 0:
        return ModuleMap(x, y, la.zeros(0, 0))
    if x is y or np.array_equal(x.actions, y.actions):
        return ModuleMap(x, y, la.eye(x.dim))
    if _conjugation_invariants(x) != _conjugation_invariants(y):
        return None
    homs = hom_space(x, y)
    if not homs:
        return None
    vecs = [h.coord_vector() for h in homs]
    coeffs = find_invertible_combination(vecs, [(y.dim, x.dim, 0)], x.p)
    if coeffs is None:
        return None
    mat = sum(int(c) * h.matrix for c, h in zip(coeffs, homs)) % x.p
    return ModuleMap(x, y, mat)


def submodule(module: Module, basis_rows: np.ndarray) -> tuple[Module, ModuleMap]:
    """Submodule spanned by the given row vectors, with its inclusion.

    The rows must span an action-invariant subspace; a non-invariant span
    raises ValidationError.
    """
    p = module.p
    basis_rows = la.reduce_mod(basis_rows, p)
    k = basis_rows.shape[0]
    cols = basis_rows.T
    acts = np.zeros((module.algebra.dim, k, k), dtype=np.int64)
    for i in range(module.algebra.dim):
        sol = la.solve(cols, (module.actions[i] @ cols) % p, p) if k else la.zeros(0, 0)
        if sol is None:
            raise ValidationError(f"span is not invariant under basis element {i}")
        acts[i] = sol
    sub = Module(module.algebra, module.side, k, acts,
                 name=f"sub[{module.describe()}]")
    return sub, ModuleMap(sub, module, cols)


def quotient_module(module: Module, image_of: np.ndarray) -> tuple[Module, ModuleMap, np.ndarray]:
    """Quotient of ``module`` by the column space of ``image_of``.

    The column space must be a submodule.  Returns (quotient, projection map,
    section matrix); the section satisfies projection @ section = identity.
    """
    p = module.p
    projection, section, q = la.quotient_data(image_of, p)
    acts = np.stack([(projection @ module.actions[i] @ section) % p
                     for i in range(module.algebra.dim)]).reshape(module.algebra.dim, q, q)
    quot = Module(module.algebra, module.side, q, acts,
                  name=f"quot[{module.describe()}]")
    proj_map = ModuleMap(module, quot, projection)
    # Well-definedness: the projection must kill the action images of the kernel.
    for i in range(module.algebra.dim):
        if np.any((projection @ module.actions[i] @ image_of) % p):
            raise ValidationError(f"column space is not invariant under basis element {i}")
    return quot, proj_map, section


def kernel_module(phi: ModuleMap) -> tuple[Module, ModuleMap]:
    """Kernel of a module map as a submodule with its inclusion."""
    rows = la.kernel_basis(phi.matrix, phi.p)
    return submodule(phi.source, rows)


def image_module(phi: ModuleMap) -> tuple[Module, ModuleMap]:
    """Image of a module map as a submodule of the target with its inclusion."""
    rows = la.image_basis(phi.matrix, phi.p)
    return submodule(phi.target, rows)


def module_generators(module: Module) -> list[int]:
    """Indices of a column-reduced generating set of basis vectors.

    Greedy in basis order: a vector joins the set when it is outside the
    algebra-span of the vectors chosen so far.  Minimality is not required.
    """
    p = module.p
    chosen: list[int] = []
    span = la.zeros(module.dim, 0)
    span_rank = 0
    for j in range(module.dim):
        e = la.eye(module.dim)[:, [j]]
        if span_rank and la.rank(np.hstack([span, e]), p) == span_rank:
            continue
        chosen.append(j)
        orbit = np.hstack([module.actions[i] @ e for i in range(module.algebra.dim)]) % p
        span = np.hstack([span, orbit])
        span = la.image_basis(span, p).T
        span_rank = span.shape[1]
        if span_rank == module.dim:
            break
    return chosen


def free_cover(module: Module) -> tuple[Module, ModuleMap]:
    """A surjection from a free module onto ``module``.

    One free summand per generator; the counit sends the basis element b of
    copy i to b acting on generator i.
    """
    alg, p = module.algebra, module.p
    gens = module_generators(module)
    if not gens:
        free = zero_module(alg, module.side)
        return free, ModuleMap(free, module, la.zeros(module.dim, 0))
    copies = [alg.regular_module(module.side) for _ in gens]
    free, _, _ = direct_sum(copies)
    eps = la.zeros(module.dim, free.dim)
    for i, g in enumerate(gens):
        for l in range(alg.dim):
            eps[:, i * alg.dim + l] = module.actions[l][:, g]
    return free, ModuleMap(free, module, eps)


def is_projective(module: Module) -> bool:
    """Splitting test: does the canonical free cover admit a section?"""
    if module.dim == 0:
        return True
    free, eps = free_cover(module)
    sections = hom_space(module, free)
    if not sections:
        return False
    composed = [la.vec((eps.matrix @ s.matrix) % module.p) for s in sections]
    stacked = np.stack(composed, axis=1)
    return la.solve(stacked, la.vec(la.eye(module.dim)), module.p) is not None


def is_injective(module: Module) -> bool:
    """A module is injective exactly when its dual is projective on the other side."""
    return is_projective(dual_module(module))


def is_flat(module: Module) -> bool:
    """Over a finite-dimensional algebra flat and projective modules coincide."""
    return is_projective(module)
