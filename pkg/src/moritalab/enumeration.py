"""Exhaustive generation of modules and tuples up to isomorphism.

Every biconditional checked in this package quantifies over some universe of
modules; these functions produce those universes by brute force and are the
independent oracle the theorem harnesses lean on.

A module structure on k^d is pinned down by the action matrices of a small
generating set of the algebra: first express each basis element as a linear
combination of words in the generators, then scan all p^(r*d*d) assignments
of generator matrices, reconstruct the full action of each candidate, and
keep the assignments satisfying the unit and multiplication laws.  The scan
is chunked and vectorised; survivors are reduced modulo isomorphism.

Scan order is deterministic, so enumeration output (and every count frozen
in the tests) is stable across runs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import linalg as la
from .algebra import (LEFT, Algebra, Module, ModuleMap, _conjugation_invariants,
                      is_isomorphic, submodule, quotient_module, hom_space,
                      zero_module)
from .morita import (DeltaModule, DeltaModuleMap, MoritaContext,
                     delta_is_isomorphic, delta_submodule, delta_quotient)
from .report import BudgetExceededError
from .tensor import tensor_over_algebra

_SCAN_BUDGET_DEFAULT = 1 << 21
_CHUNK = 1 << 13


def scan_budget() -> int:
    """Candidate-count ceiling for exhaustive scans; env-overridable."""
    raw = os.environ.get("MORITA_ENUM_BUDGET")
    return int(raw) if raw else _SCAN_BUDGET_DEFAULT


@dataclass(eq=False)
class GeneratorPlan:
    """A generating set of an algebra plus word data to rebuild full actions.

    ``words`` index into ``generators`` ((), the empty word, is the unit) and
    their values form a basis of the algebra; ``coefficients[j, l]`` is the
    weight of word j in basis element l.
    """

    algebra: Algebra
    generators: list[int]
    words: list[tuple[int, ...]]
    coefficients: np.ndarray


def _word_basis(algebra: Algebra, generators: list[int]):
    """Span-enlarging words in the generators, BFS by length.

    Keeps a word only when its value leaves the current span, which keeps the
    kept values linearly independent; pruned words contribute nothing new, so
    the kept span still equals the generated unital subalgebra.
    """
    p = algebra.p
    gen_elements = [la.eye(algebra.dim)[:, g] for g in generators]
    words: list[tuple[int, ...]] = [()]
    values = {(): algebra.unit.copy()}
    rows = [algebra.unit.copy()]
    frontier = [()]
    while frontier:
        next_frontier = []
        for w in frontier:
            for s in range(len(generators)):
                value = algebra.multiply(values[w], gen_elements[s])
                if la.coords_in_span(rows, value, p) is None:
                    word = w + (s,)
                    words.append(word)
                    values[word] = value
                    rows.append(value)
                    next_frontier.append(word)
        frontier = next_frontier
    return words, values, rows


_PLAN_CACHE: dict[int, GeneratorPlan] = {}


def generator_plan(algebra: Algebra) -> GeneratorPlan:
    """Greedy generating set over basis elements, minimised by drop-one."""
    cached = _PLAN_CACHE.get(id(algebra))
    if cached is not None and cached.algebra is algebra:
        return cached
    p = algebra.p
    chosen: list[int] = []
    words, values, rows = _word_basis(algebra, chosen)
    for i in range(algebra.dim):
        if len(words) == algebra.dim:
            break
        if la.coords_in_span(rows, la.eye(algebra.dim)[:, i], p) is None:
            chosen.append(i)
            words, values, rows = _word_basis(algebra, chosen)
    for g in list(chosen):
        trial = [h for h in chosen if h != g]
        t_words, t_values, t_rows = _word_basis(algebra, trial)
        if len(t_words) == algebra.dim:
            chosen, words, values, rows = trial, t_words, t_values, t_rows
    # Express each basis element in the word values: columns of V are the
    # values, so V @ coefficients = identity.
    value_cols = np.stack([values[w] for w in words], axis=1) % p
    coefficients = la.solve(value_cols, la.eye(algebra.dim), p)
    plan = GeneratorPlan(algebra, chosen, words, coefficients)
    _PLAN_CACHE[id(algebra)] = plan
    return plan


def _structures_of_dim(algebra: Algebra, side: str, d: int,
                       budget: int | None) -> list[np.ndarray]:
    """All valid action tensors of shape (algebra.dim, d, d), no iso reduction."""
    p = algebra.p
    if d == 0:
        return [np.zeros((algebra.dim, 0, 0), dtype=np.int64)]
    plan = generator_plan(algebra)
    r = len(plan.generators)
    total = p ** (r * d * d)
    limit = budget if budget is not None else scan_budget()
    if total > limit:
        raise BudgetExceededError(
            f"module scan over {algebra.name or '<algebra>'} at dim {d} needs "
            f"{total} candidates, budget is {limit}")
    word_index = {w: j for j, w in enumerate(plan.words)}
    structure = algebra.structure
    unit = algebra.unit
    identity = la.eye(d)
    found: list[np.ndarray] = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        n = idx.size
        digits = np.empty((n, r * d * d), dtype=np.int64)
        rem = idx.copy()
        for k in range(r * d * d):
            digits[:, k] = rem % p
            rem //= p
        mats = digits.reshape(n, r, d, d)
        # Word values by prefix: BFS order guarantees each prefix was kept.
        values = np.empty((n, len(plan.words), d, d), dtype=np.int64)
        for j, w in enumerate(plan.words):
            if not w:
                values[:, j] = identity
            elif side == LEFT:
                values[:, j] = np.matmul(values[:, word_index[w[:-1]]],
                                         mats[:, w[-1]]) % p
            else:
                values[:, j] = np.matmul(mats[:, w[-1]],
                                         values[:, word_index[w[:-1]]]) % p
        actions = np.transpose(
            np.tensordot(plan.coefficients, values, axes=([0], [1])),
            (1, 0, 2, 3)) % p
        # The unit law holds by construction (the empty word is the unit), so
        # only the multiplication law filters.  One row of it prunes cheaply
        # before the full quadratic check.
        actions = actions[_law_mask(actions, structure, side, p, rows=[0])]
        actions = actions[_law_mask(actions, structure, side, p)]
        found.extend(actions)
    return found


def _law_mask(actions: np.ndarray, structure: np.ndarray, side: str, p: int,
              rows: list[int] | None = None) -> np.ndarray:
    """Mask of candidates satisfying act(b_i) act(b_j) = act(b_i b_j).

    ``rows`` restricts i to the given basis indices; None checks all pairs.
    For right modules the composition order is reversed.
    """
    sub = actions if rows is None else actions[:, rows]
    st = structure if rows is None else structure[rows]
    if side == LEFT:
        products = np.matmul(sub[:, :, None], actions[:, None, :])
    else:
        products = np.matmul(actions[:, None, :], sub[:, :, None])
    expected = np.transpose(
        np.tensordot(st, actions, axes=([2], [1])), (2, 0, 1, 3, 4))
    return ~np.any((products - expected) % p, axis=(1, 2, 3, 4))


_MODULE_CACHE: dict[tuple[int, str, int], tuple[Algebra, list[Module]]] = {}


def _classes_of_dim(algebra: Algebra, side: str, d: int,
                    budget: int | None) -> list[Module]:
    key = (id(algebra), side, d)
    cached = _MODULE_CACHE.get(key)
    if cached is not None and cached[0] is algebra:
        return cached[1]
    candidates = _structures_of_dim(algebra, side, d, budget)
    classes: list[Module] = []
    buckets: dict[tuple, list[Module]] = {}
    for k, acts in enumerate(candidates):
        module = Module(algebra, side, d, acts,
                        name=f"enum[{algebra.name or 'R'}/{side}/{d}/{k}]")
        bucket = buckets.setdefault(_conjugation_invariants(module), [])
        if not any(is_isomorphic(module, rep) is not None for rep in bucket):
            bucket.append(module)
            classes.append(module)
    _MODULE_CACHE[key] = (algebra, classes)
    return classes


def enumerate_modules(algebra: Algebra, side: str, max_dim: int,
                      budget: int | None = None) -> list[Module]:
    """One representative per isomorphism class of modules of dim <= max_dim."""
    out: list[Module] = []
    for d in range(max_dim + 1):
        out.extend(_classes_of_dim(algebra, side, d, budget))
    return out


_TUPLE_CACHE: dict[tuple[int, str, int],
                   tuple[MoritaContext, list[DeltaModule]]] = {}


def enumerate_delta_modules(ctx: MoritaContext, side: str, max_dim: int,
                            budget: int | None = None) -> list[DeltaModule]:
    """One representative per isomorphism class of tuples with component
    dimensions <= max_dim.

    Scans all pairs of component classes and, for each pair, every element of
    the two structural hom spaces; duplicates are removed with the tuple
    isomorphism test.  Bucketing by component identity is sound because the
    components are drawn from fixed representative lists.
    """
    key = (id(ctx), side, max_dim)
    cached = _TUPLE_CACHE.get(key)
    if cached is not None and cached[0] is ctx:
        return cached[1]
    p = ctx.p
    xs = enumerate_modules(ctx.algebra_a, side, max_dim, budget)
    ys = enumerate_modules(ctx.algebra_b, side, max_dim, budget)
    limit = budget if budget is not None else scan_budget()
    out: list[DeltaModule] = []
    counter = 0
    for x in xs:
        for y in ys:
            if side == LEFT:
                tf = tensor_over_algebra(ctx.m, x)
                tg = tensor_over_algebra(ctx.n, y)
            else:
                tf = tensor_over_algebra(x, ctx.n)
                tg = tensor_over_algebra(y, ctx.m)
            f_basis = hom_space(tf.module, y)
            g_basis = hom_space(tg.module, x)
            hf, hg = len(f_basis), len(g_basis)
            if p ** (hf + hg) > limit:
                raise BudgetExceededError(
                    f"structural-map scan needs {p ** (hf + hg)} candidates, "
                    f"budget is {limit}")
            buckets: list[DeltaModule] = []
            for code in range(p ** (hf + hg)):
                digits = []
                rem = code
                for _ in range(hf + hg):
                    digits.append(rem % p)
                    rem //= p
                f_mat = la.zeros(y.dim, tf.dim)
                for c, h in zip(digits[:hf], f_basis):
                    f_mat = (f_mat + c * h.matrix) % p
                g_mat = la.zeros(x.dim, tg.dim)
                for c, h in zip(digits[hf:], g_basis):
                    g_mat = (g_mat + c * h.matrix) % p
                candidate = DeltaModule(
                    ctx, side, x, y,
                    (f_mat @ tf.projection) % p, (g_mat @ tg.projection) % p,
                    name=f"enum[{ctx.name or 'ctx'}/{side}/{counter}]")
                counter += 1
                if not any(delta_is_isomorphic(candidate, rep) is not None
                           for rep in buckets):
                    buckets.append(candidate)
                    out.append(candidate)
    _TUPLE_CACHE[key] = (ctx, out)
    return out


def invariant_subspaces(module: Module) -> list[np.ndarray]:
    """Column bases of all action-invariant subspaces, zero and full included.

    Subspaces are enumerated through their reduced-row-echelon row bases, one
    representative per subspace, then filtered by invariance.
    """
    p = module.p
    d = module.dim
    out = []
    for cols in _rref_patterns(d, p):
        span = cols  # (d, r) column basis
        good = True
        for i in range(module.algebra.dim):
            moved = (module.actions[i] @ span) % p
            if span.shape[1] == 0:
                if np.any(moved):
                    good = False
                    break
                continue
            if la.solve(span, moved, p) is None:
                good = False
                break
        if good:
            out.append(span)
    return out


def _rref_patterns(d: int, p: int):
    """Column bases of all subspaces of GF(p)^d, via rref row patterns."""
    yield la.zeros(d, 0)
    for r in range(1, d + 1):
        for pivots in combinations(range(d), r):
            free_cells = [(i, j) for i in range(r) for j in range(d)
                          if j > pivots[i] and j not in pivots]
            base = la.zeros(r, d)
            for i, c in enumerate(pivots):
                base[i, c] = 1
            for code in range(p ** len(free_cells)):
                rows = base.copy()
                rem = code
                for (i, j) in free_cells:
                    rows[i, j] = rem % p
                    rem //= p
                yield rows.T.copy()


def short_exact_sequences(module: Module) \
        -> list[tuple[Module, ModuleMap, Module, ModuleMap]]:
    """All extensions 0 -> sub -> module -> quotient -> 0 from invariant subspaces."""
    out = []
    for span in invariant_subspaces(module):
        sub, incl = submodule(module, span.T)
        quot, proj, _ = quotient_module(module, span)
        out.append((sub, incl, quot, proj))
    return out


def delta_invariant_pairs(v: DeltaModule) -> list[tuple[np.ndarray, np.ndarray]]:
    """Column-basis pairs (in x, in y) spanning sub-tuples of v."""
    p = v.p
    ctx = v.context
    dn, dm = ctx.n.dim, ctx.m.dim
    out = []
    for span_x in invariant_subspaces(v.x):
        for span_y in invariant_subspaces(v.y):
            if v.side == LEFT:
                f_moved = (v.f_plain @ la.kron(la.eye(dm), span_x, p)) % p
                g_moved = (v.g_plain @ la.kron(la.eye(dn), span_y, p)) % p
            else:
                f_moved = (v.f_plain @ la.kron(span_x, la.eye(dn), p)) % p
                g_moved = (v.g_plain @ la.kron(span_y, la.eye(dm), p)) % p
            f_ok = f_moved.shape[1] == 0 or not np.any(f_moved) or \
                (span_y.shape[1] > 0 and la.solve(span_y, f_moved, p) is not None)
            if not f_ok:
                continue
            g_ok = g_moved.shape[1] == 0 or not np.any(g_moved) or \
                (span_x.shape[1] > 0 and la.solve(span_x, g_moved, p) is not None)
            if g_ok:
                out.append((span_x, span_y))
    return out


def delta_short_exact_sequences(v: DeltaModule) \
        -> list[tuple[DeltaModule, DeltaModuleMap, DeltaModule, DeltaModuleMap]]:
    """All extensions 0 -> sub -> v -> quotient -> 0 of tuples."""
    out = []
    for span_x, span_y in delta_invariant_pairs(v):
        sub, incl = delta_submodule(v, span_x, span_y)
        quot, proj = delta_quotient(v, span_x, span_y)
        out.append((sub, incl, quot, proj))
    return out
