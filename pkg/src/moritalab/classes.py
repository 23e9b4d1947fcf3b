"""Module classes and duality pairs.

A class oracle is a named membership predicate for modules on one side of a
ring, together with a sampler.  Oracles over a Morita context classify
four-tuples instead of plain modules; everything downstream (duality pairs,
perfection, the transfer harnesses) is written against the common surface so
the same verification code runs at both levels.

A duality pair couples a class on one side with a class on the other through
the character module: membership on the left must match membership of the
dual on the right, and the right class must be closed under summands and
finite sums.  The harnesses at the bottom of this file check that the tuple
classes built from component classes form duality pairs exactly when the
component classes do, and that perfection and completeness transfer the same
way.

Verdict discipline: clauses that quantify over modules up to the requested
bound and are fully decided there report "pass"; clauses that sample an
infinite closure condition (direct sums of arbitrary families) report
"consistent-up-to-bound" and never "pass".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg as la
from .algebra import (LEFT, RIGHT, Algebra, Module, direct_sum, dual_module,
                      is_flat, is_injective, is_projective, kernel_module,
                      quotient_module, submodule, zero_module)
from .enumeration import (delta_short_exact_sequences, enumerate_delta_modules,
                          enumerate_modules, short_exact_sequences)
from .functors import (coinduce_from_a, coinduce_from_b, induce_from_a,
                       induce_from_b, tilde_f, tilde_g)
from .morita import (DeltaModule, MoritaContext, delta_direct_sum, delta_dual,
                     delta_submodule, is_flat_delta, is_injective_delta,
                     is_projective_delta, unpack)
from .report import (AlgebraMismatchError, CheckReport, ValidationError,
                     Verdict)
from .tensor import tor_one_dimension

__all__ = [
    "ClassOracle", "DualityPairSpec", "builtin_oracles", "verify_oracle",
    "in_component_class", "in_mono_class", "in_epi_class",
    "component_class_oracle", "mono_class_oracle", "epi_class_oracle",
    "verify_duality_pair", "verify_perfection", "check_perfect_pair",
    "check_symmetric_pair", "check_complete_pair",
    "check_functor_membership", "check_duality_transfer",
    "check_perfect_transfer", "check_complete_transfer",
    "check_class_agreement", "check_injective_structure",
]


# ---------------------------------------------------------------------------
# carrier helpers: the same ops over plain modules and over tuples


def carrier_of(obj) -> tuple[object, str]:
    if isinstance(obj, DeltaModule):
        return obj.context, obj.side
    if isinstance(obj, Module):
        return obj.algebra, obj.side
    raise ValidationError(f"not a module object: {obj!r}")


def universe_of(ring, side: str, bound: int) -> list:
    """Every isomorphism class up to the bound, one representative each."""
    if isinstance(ring, MoritaContext):
        return enumerate_delta_modules(ring, side, bound)
    return enumerate_modules(ring, side, bound)


def dual_of(obj):
    if isinstance(obj, DeltaModule):
        return delta_dual(obj)
    return dual_module(obj)


def sum_of(u, v):
    if isinstance(u, DeltaModule):
        return delta_direct_sum([u, v])[0]
    return direct_sum([u, v])[0]


def regular_of(ring, side: str):
    """The ring seen as a module over itself on the given side."""
    if isinstance(ring, MoritaContext):
        return unpack(ring.delta.regular_module(side), ring)
    return ring.regular_module(side)


def extensions_of(obj) -> list:
    """All (sub, quotient) pairs arising from submodules of the object."""
    if isinstance(obj, DeltaModule):
        return [(sub, quot) for sub, _, quot, _ in delta_short_exact_sequences(obj)]
    return [(sub, quot) for sub, _, quot, _ in short_exact_sequences(obj)]


def _describe(obj) -> str:
    return obj.describe()


def _ring_name(ring) -> str:
    return getattr(ring, "name", "") or "<ring>"


# ---------------------------------------------------------------------------
# oracles


@dataclass(eq=False)
class ClassOracle:
    """A named class of modules on one side of a ring.

    ``ring`` is an Algebra (objects are plain modules) or a MoritaContext
    (objects are four-tuples).  ``member`` must be an isomorphism invariant
    and must accept the zero module; verify_oracle spot-checks both.  The
    default sampler filters the enumerated universe through the predicate.
    """

    name: str
    ring: object
    side: str
    member: Callable
    sampler: Callable | None = None

    def __post_init__(self):
        self._memo: dict[int, tuple[object, bool]] = {}

    def contains(self, obj) -> bool:
        ring, side = carrier_of(obj)
        if ring is not self.ring or side != self.side:
            raise AlgebraMismatchError(
                f"oracle {self.name!r} got an object over the wrong ring or side")
        key = id(obj)
        hit = self._memo.get(key)
        if hit is not None and hit[0] is obj:
            return hit[1]
        answer = bool(self.member(obj))
        self._memo[key] = (obj, answer)
        return answer

    def sample(self, bound: int) -> list:
        if self.sampler is not None:
            return list(self.sampler(bound))
        return [obj for obj in universe_of(self.ring, self.side, bound)
                if self.contains(obj)]


_BUILTIN_CACHE: dict[tuple[int, str], tuple[object, dict]] = {}


def builtin_oracles(ring, side: str) -> dict[str, ClassOracle]:
    """The stock classes: projective, injective, flat, fp-injective, all.

    Over a finite-dimensional algebra every module is finitely presented and
    the ring is noetherian and perfect, so flat coincides with projective and
    fp-injective with injective; the oracles keep separate names because the
    pairings treat them as different classes.
    """
    key = (id(ring), side)
    hit = _BUILTIN_CACHE.get(key)
    if hit is not None and hit[0] is ring:
        return hit[1]
    if isinstance(ring, MoritaContext):
        members = {
            "projective": is_projective_delta,
            "injective": is_injective_delta,
            "flat": is_flat_delta,
            "fp-injective": is_injective_delta,
            "all": lambda v: True,
        }
    else:
        members = {
            "projective": is_projective,
            "injective": is_injective,
            "flat": is_flat,
            "fp-injective": is_injective,
            "all": lambda m: True,
        }
    tag = f"{_ring_name(ring)}/{side}"
    out = {kind: ClassOracle(f"{kind}:{tag}", ring, side, fn)
           for kind, fn in members.items()}
    _BUILTIN_CACHE[key] = (ring, out)
    return out


def _unitriangular(d: int, p: int) -> np.ndarray:
    m = la.eye(d)
    for i in range(1, d):
        m[i, i - 1] = 1 % p
    return m


def _twist(obj):
    """An isomorphic copy in a different basis (lower unitriangular change)."""
    if isinstance(obj, DeltaModule):
        px = _unitriangular(obj.x.dim, obj.p)
        py = _unitriangular(obj.y.dim, obj.p)
        return delta_submodule(obj, px, py)[0]
    return submodule(obj, _unitriangular(obj.dim, obj.p))[0]


def verify_oracle(oracle: ClassOracle, bound: int) -> CheckReport:
    """Spot-check the oracle invariants on the enumerated universe."""
    clauses = []
    if isinstance(oracle.ring, MoritaContext):
        zero = universe_of(oracle.ring, oracle.side, 0)[0]
    else:
        zero = zero_module(oracle.ring, oracle.side)
    ok = oracle.contains(zero)
    clauses.append(CheckReport(
        "zero-module", Verdict.PASS if ok else Verdict.REFUTED,
        detail="the zero module belongs to every class used here"))
    witness = None
    for obj in universe_of(oracle.ring, oracle.side, bound):
        if oracle.contains(obj) != oracle.contains(_twist(obj)):
            witness = obj
            break
    clauses.append(CheckReport(
        "isomorphism-invariance",
        Verdict.PASS if witness is None else Verdict.REFUTED,
        detail=f"membership compared against a rebased copy, bound {bound}",
        witnesses=[] if witness is None else [{"object": _describe(witness)}]))
    return CheckReport.combine(f"oracle({oracle.name})", clauses)


# ---------------------------------------------------------------------------
# tuple classes built from component classes


def _require_component_classes(v: DeltaModule, class_a: ClassOracle,
                               class_b: ClassOracle) -> None:
    ctx = v.context
    if class_a.ring is not ctx.algebra_a or class_a.side != v.side:
        raise AlgebraMismatchError(
            f"{class_a.name!r} does not classify {v.side} modules over the first algebra")
    if class_b.ring is not ctx.algebra_b or class_b.side != v.side:
        raise AlgebraMismatchError(
            f"{class_b.name!r} does not classify {v.side} modules over the second algebra")


def in_component_class(v: DeltaModule, class_a: ClassOracle,
                       class_b: ClassOracle) -> bool:
    """Both components belong to their classes; the maps are unconstrained."""
    _require_component_classes(v, class_a, class_b)
    return class_a.contains(v.x) and class_b.contains(v.y)


def in_mono_class(v: DeltaModule, class_a: ClassOracle,
                  class_b: ClassOracle) -> bool:
    """Structure maps injective with cokernels in the component classes."""
    _require_component_classes(v, class_a, class_b)
    if la.rank(v.f_map.matrix, v.p) != v.tensor_f.dim:
        return False
    if la.rank(v.g_map.matrix, v.p) != v.tensor_g.dim:
        return False
    x_quot, _, _ = quotient_module(v.x, la.image_basis(v.g_map.matrix, v.p).T)
    y_quot, _, _ = quotient_module(v.y, la.image_basis(v.f_map.matrix, v.p).T)
    return class_a.contains(x_quot) and class_b.contains(y_quot)


def in_epi_class(v: DeltaModule, class_a: ClassOracle,
                 class_b: ClassOracle) -> bool:
    """Transposed maps surjective with kernels in the component classes."""
    _require_component_classes(v, class_a, class_b)
    tf = tilde_f(v)
    if la.rank(tf.matrix, v.p) != tf.target.dim:
        return False
    tg = tilde_g(v)
    if la.rank(tg.matrix, v.p) != tg.target.dim:
        return False
    ker_f, _ = kernel_module(tf)
    ker_g, _ = kernel_module(tg)
    return class_a.contains(ker_f) and class_b.contains(ker_g)


# Tuple oracles are cached by identity so their membership memos survive
# across harnesses; the stored key objects keep the ids stable.
_TUPLE_ORACLE_CACHE: dict[tuple, tuple] = {}


def _tuple_oracle(kind: str, predicate, ctx: MoritaContext,
                  class_a: ClassOracle, class_b: ClassOracle) -> ClassOracle:
    if class_a.side != class_b.side:
        raise AlgebraMismatchError("component classes live on different sides")
    if class_a.ring is not ctx.algebra_a or class_b.ring is not ctx.algebra_b:
        raise AlgebraMismatchError("component classes do not match the context")
    key = (kind, id(ctx), id(class_a), id(class_b))
    hit = _TUPLE_ORACLE_CACHE.get(key)
    if hit is not None and hit[0] is ctx and hit[1] is class_a and hit[2] is class_b:
        return hit[3]
    name = f"{kind}[{class_a.name}, {class_b.name}]"
    oracle = ClassOracle(name, ctx, class_a.side,
                         lambda v: predicate(v, class_a, class_b))
    _TUPLE_ORACLE_CACHE[key] = (ctx, class_a, class_b, oracle)
    return oracle


def component_class_oracle(ctx, class_a, class_b) -> ClassOracle:
    return _tuple_oracle("comp", in_component_class, ctx, class_a, class_b)


def mono_class_oracle(ctx, class_a, class_b) -> ClassOracle:
    return _tuple_oracle("mono", in_mono_class, ctx, class_a, class_b)


def epi_class_oracle(ctx, class_a, class_b) -> ClassOracle:
    return _tuple_oracle("epi", in_epi_class, ctx, class_a, class_b)


# ---------------------------------------------------------------------------
# duality pairs


@dataclass(eq=False)
class DualityPairSpec:
    """A candidate duality pair with the enumeration bound for checking it."""

    left: ClassOracle
    right: ClassOracle
    bound: int

    def __post_init__(self):
        if self.left.ring is not self.right.ring:
            raise AlgebraMismatchError("pair classes live over different rings")
        if self.left.side == self.right.side:
            raise ValidationError("pair classes must sit on opposite sides")

    @property
    def name(self) -> str:
        return f"{self.left.name} | {self.right.name}"

    def swapped(self) -> "DualityPairSpec":
        return DualityPairSpec(self.right, self.left, self.bound)


# Result caches for the two scan-heavy checks, keyed by oracle identity and
# bound.  The same scans back several harnesses; reports are treated as
# immutable once returned.
_VERIFY_CACHE: dict[tuple, tuple] = {}
_PERFECTION_CACHE: dict[tuple, tuple] = {}


def verify_duality_pair(spec: DualityPairSpec) -> CheckReport:
    """Definition check: character biconditional plus right-class closure.

    Both clauses quantify over the enumerated universes up to the bound and
    are fully decided there, so they report pass or refuted.  The closure
    clause checks each unordered pair biconditionally: sum in the class iff
    both summands are, which covers finite sums and summands at once.
    """
    cache_key = (id(spec.left), id(spec.right), spec.bound)
    hit = _VERIFY_CACHE.get(cache_key)
    if hit is not None and hit[0] is spec.left and hit[1] is spec.right:
        return hit[2]
    clauses = []
    witness = None
    for obj in universe_of(spec.left.ring, spec.left.side, spec.bound):
        if spec.left.contains(obj) != spec.right.contains(dual_of(obj)):
            witness = obj
            break
    clauses.append(CheckReport(
        "character-biconditional",
        Verdict.PASS if witness is None else Verdict.REFUTED,
        detail=f"membership against dual membership, bound {spec.bound}",
        witnesses=[] if witness is None else [
            {"object": _describe(witness),
             "left": spec.left.contains(witness),
             "dual-right": spec.right.contains(dual_of(witness))}]))

    objs = universe_of(spec.right.ring, spec.right.side, spec.bound)
    pair_witness = None
    for i, u in enumerate(objs):
        for v in objs[i:]:
            both = spec.right.contains(u) and spec.right.contains(v)
            if both != spec.right.contains(sum_of(u, v)):
                pair_witness = (u, v)
                break
        if pair_witness:
            break
    clauses.append(CheckReport(
        "sum-and-summand-closure",
        Verdict.PASS if pair_witness is None else Verdict.REFUTED,
        detail="u+v in the right class iff u and v are, over all pairs",
        witnesses=[] if pair_witness is None else [
            {"first": _describe(pair_witness[0]),
             "second": _describe(pair_witness[1])}]))
    report = CheckReport.combine(f"duality-pair({spec.name})", clauses,
                                 meta={"bound": spec.bound})
    _VERIFY_CACHE[cache_key] = (spec.left, spec.right, report)
    return report


def verify_perfection(spec: DualityPairSpec) -> CheckReport:
    """Left class contains the ring, closed under direct sums and extensions.

    Sum closure is an infinite condition; it is sampled pairwise over the
    members found at the bound and therefore never reports better than
    consistent-up-to-bound.  Extension closure runs over every short exact
    sequence of every enumerated module, which is complete at the bound.
    """
    left = spec.left
    cache_key = (id(left), spec.bound)
    hit = _PERFECTION_CACHE.get(cache_key)
    if hit is not None and hit[0] is left:
        return hit[1]
    clauses = []
    reg = regular_of(left.ring, left.side)
    has_ring = left.contains(reg)
    clauses.append(CheckReport(
        "contains-regular",
        Verdict.PASS if has_ring else Verdict.REFUTED,
        detail="the ring as a module over itself belongs to the left class",
        witnesses=[] if has_ring else [{"object": _describe(reg)}]))

    members = [obj for obj in universe_of(left.ring, left.side, spec.bound)
               if left.contains(obj)]
    bad = None
    for i, u in enumerate(members):
        for v in members[i:]:
            if not left.contains(sum_of(u, v)):
                bad = (u, v)
                break
        if bad:
            break
    clauses.append(CheckReport(
        "direct-sum-closure",
        Verdict.CONSISTENT if bad is None else Verdict.REFUTED,
        detail="pairwise sums of members at the bound; arbitrary families "
               "are not finitely checkable",
        witnesses=[] if bad is None else [
            {"first": _describe(bad[0]), "second": _describe(bad[1])}]))

    ext_bad = None
    for whole in universe_of(left.ring, left.side, spec.bound):
        for sub, quot in extensions_of(whole):
            if left.contains(sub) and left.contains(quot) \
                    and not left.contains(whole):
                ext_bad = (sub, whole, quot)
                break
        if ext_bad:
            break
    clauses.append(CheckReport(
        "extension-closure",
        Verdict.PASS if ext_bad is None else Verdict.REFUTED,
        detail="middle terms of all enumerated short exact sequences",
        witnesses=[] if ext_bad is None else [
            {"sub": _describe(ext_bad[0]), "middle": _describe(ext_bad[1]),
             "quotient": _describe(ext_bad[2])}]))
    report = CheckReport.combine(f"perfection({left.name})", clauses,
                                 meta={"bound": spec.bound})
    _PERFECTION_CACHE[cache_key] = (left, report)
    return report


def check_perfect_pair(spec: DualityPairSpec) -> CheckReport:
    return CheckReport.combine(
        f"perfect({spec.name})",
        [verify_duality_pair(spec), verify_perfection(spec)])


def check_symmetric_pair(spec: DualityPairSpec) -> CheckReport:
    """Both orientations of the pair verify."""
    return CheckReport.combine(
        f"symmetric({spec.name})",
        [verify_duality_pair(spec), verify_duality_pair(spec.swapped())])


def check_complete_pair(spec: DualityPairSpec) -> CheckReport:
    """Symmetric and perfect at once."""
    return CheckReport.combine(
        f"complete({spec.name})",
        [check_symmetric_pair(spec), verify_perfection(spec)])


# ---------------------------------------------------------------------------
# transfer harnesses


def _component_quad(ctx: MoritaContext, c1, c2, d1, d2) -> None:
    checks = [(c1, ctx.algebra_a, LEFT), (c2, ctx.algebra_a, None),
              (d1, ctx.algebra_b, LEFT), (d2, ctx.algebra_b, None)]
    for oracle, alg, side in checks:
        if oracle.ring is not alg:
            raise AlgebraMismatchError(
                f"oracle {oracle.name!r} is not a class over {_ring_name(alg)}")
        if side is not None and oracle.side != side:
            raise AlgebraMismatchError(
                f"oracle {oracle.name!r} must classify {side} modules")
    if c1.side == c2.side or d1.side == d2.side:
        raise ValidationError("component classes must come in opposite-side pairs")
    if c1.side != d1.side:
        raise ValidationError("the two left-hand classes must share a side")


def _as_input(report: CheckReport) -> CheckReport:
    """Mark a sub-report as an input to an equivalence, not a decision."""
    return CheckReport("input:" + report.name, report.verdict, report.detail,
                       report.witnesses, report.hypotheses, report.clauses,
                       report.meta)


def _holds(report: CheckReport) -> bool:
    return report.verdict is not Verdict.REFUTED


def check_functor_membership(ctx: MoritaContext, c1, c2, d1, d2,
                             bound: int) -> CheckReport:
    """Eight biconditionals tying plain-module classes to tuple classes.

    For every enumerated left module X over the first algebra (and Y over the
    second): inducing lands in the mono class iff the module was in its
    class, coinducing lands in the epi class likewise, and the duals land in
    the transposed classes over the opposite side.
    """
    _component_quad(ctx, c1, c2, d1, d2)
    side = c1.side
    if side != LEFT:
        raise ValidationError("the functor checks run from left-module classes")

    a_mods = enumerate_modules(ctx.algebra_a, LEFT, bound)
    b_mods = enumerate_modules(ctx.algebra_b, LEFT, bound)
    cases = [
        ("induce-a-mono", a_mods,
         lambda x: c1.contains(x) == in_mono_class(induce_from_a(ctx, x), c1, d1)),
        ("induce-b-mono", b_mods,
         lambda y: d1.contains(y) == in_mono_class(induce_from_b(ctx, y), c1, d1)),
        ("induce-a-dual-epi", a_mods,
         lambda x: c2.contains(dual_module(x))
         == in_epi_class(delta_dual(induce_from_a(ctx, x)), c2, d2)),
        ("induce-b-dual-epi", b_mods,
         lambda y: d2.contains(dual_module(y))
         == in_epi_class(delta_dual(induce_from_b(ctx, y)), c2, d2)),
        ("coinduce-a-epi", a_mods,
         lambda x: c1.contains(x) == in_epi_class(coinduce_from_a(ctx, x), c1, d1)),
        ("coinduce-b-epi", b_mods,
         lambda y: d1.contains(y) == in_epi_class(coinduce_from_b(ctx, y), c1, d1)),
        ("coinduce-a-dual-mono", a_mods,
         lambda x: c2.contains(dual_module(x))
         == in_mono_class(delta_dual(coinduce_from_a(ctx, x)), c2, d2)),
        ("coinduce-b-dual-mono", b_mods,
         lambda y: d2.contains(dual_module(y))
         == in_mono_class(delta_dual(coinduce_from_b(ctx, y)), c2, d2)),
    ]
    clauses = []
    for name, pool, check in cases:
        witness = None
        for obj in pool:
            if not check(obj):
                witness = obj
                break
        clauses.append(CheckReport(
            name, Verdict.PASS if witness is None else Verdict.REFUTED,
            witnesses=[] if witness is None else [{"object": _describe(witness)}]))
    hyp = [{"statement": "inner bimodules finite dimensional on both sides",
            "m-dim": ctx.m.dim, "n-dim": ctx.n.dim}]
    report = CheckReport.combine(
        "functor-class-membership", clauses,
        detail=f"exhaustive over component modules up to dim {bound}",
        meta={"bound": bound})
    report.hypotheses = hyp
    return report


def _tuple_pair_specs(ctx, c1, c2, d1, d2, bound):
    return {
        "mono-epi": DualityPairSpec(mono_class_oracle(ctx, c1, d1),
                                    epi_class_oracle(ctx, c2, d2), bound),
        "componentwise": DualityPairSpec(component_class_oracle(ctx, c1, d1),
                                         component_class_oracle(ctx, c2, d2),
                                         bound),
        "epi-mono": DualityPairSpec(epi_class_oracle(ctx, c1, d1),
                                    mono_class_oracle(ctx, c2, d2), bound),
    }


def check_duality_transfer(ctx: MoritaContext, c1, c2, d1, d2,
                           bound: int) -> CheckReport:
    """The four pair statements hold or fail together.

    Statements: (a) both component pairs are duality pairs; (b) the
    mono/epi tuple pair is; (c) the componentwise tuple pair is; (d) the
    epi/mono tuple pair is.  The decision clause compares the four truth
    values; the pair reports themselves are attached as inputs.
    """
    _component_quad(ctx, c1, c2, d1, d2)
    specs = _tuple_pair_specs(ctx, c1, c2, d1, d2, bound)
    r_a = verify_duality_pair(DualityPairSpec(c1, c2, bound))
    r_b = verify_duality_pair(DualityPairSpec(d1, d2, bound))
    r_mono_epi = verify_duality_pair(specs["mono-epi"])
    r_comp = verify_duality_pair(specs["componentwise"])
    r_epi_mono = verify_duality_pair(specs["epi-mono"])

    statements = {
        "components": _holds(r_a) and _holds(r_b),
        "mono-epi": _holds(r_mono_epi),
        "componentwise": _holds(r_comp),
        "epi-mono": _holds(r_epi_mono),
    }
    agree = len(set(statements.values())) == 1
    disagreeing = [k for k, val in statements.items()
                   if val != statements["components"]]
    equivalence = CheckReport(
        "statement-equivalence",
        Verdict.PASS if agree else Verdict.REFUTED,
        detail="; ".join(f"{k}={v}" for k, v in statements.items()),
        witnesses=[] if agree else [{"disagree": disagreeing}])

    return CheckReport(
        name="duality-pair-transfer",
        verdict=equivalence.verdict,
        detail=f"four pair statements compared at bound {bound}",
        clauses=[_as_input(r_a), _as_input(r_b), _as_input(r_mono_epi),
                 _as_input(r_comp), _as_input(r_epi_mono), equivalence],
        hypotheses=[{"statement": "inner bimodules finite dimensional, so "
                                  "finitely presented on either side",
                     "m-dim": ctx.m.dim, "n-dim": ctx.n.dim}],
        meta={"bound": bound, "statements": statements})


def _tor_hypothesis(ctx: MoritaContext, c1, d1, bound: int) -> CheckReport:
    """Vanishing of the first torsion of the inner bimodules on class members.

    Interchanges with finite sums and every object the perfection clauses
    touch stays within the bound, so a clean scan certifies the hypothesis
    for the whole run.
    """
    witness = None
    for d in d1.sample(bound):
        if tor_one_dimension(ctx.n, d):
            witness = ("second-inner", d)
            break
    if witness is None:
        for c in c1.sample(bound):
            if tor_one_dimension(ctx.m, c):
                witness = ("first-inner", c)
                break
    return CheckReport(
        "torsion-vanishing",
        Verdict.PASS if witness is None else Verdict.HYPOTHESIS_FAILURE,
        detail="first torsion of the inner bimodules against class members",
        witnesses=[] if witness is None else [
            {"bimodule": witness[0], "object": _describe(witness[1])}])


def check_perfect_transfer(ctx: MoritaContext, c1, c2, d1, d2,
                           bound: int) -> CheckReport:
    """Perfection transfers between component pairs and tuple pairs.

    Two equivalences are decided: the mono/epi pair is perfect iff both
    component pairs are (under the torsion-vanishing hypothesis), and the
    componentwise pair is perfect iff additionally both inner bimodules
    belong to the left component classes.  Perfection involves closure under
    arbitrary direct sums, so the equivalences never report better than
    consistent-up-to-bound.
    """
    _component_quad(ctx, c1, c2, d1, d2)
    specs = _tuple_pair_specs(ctx, c1, c2, d1, d2, bound)
    tor = _tor_hypothesis(ctx, c1, d1, bound)

    perfect_a = check_perfect_pair(DualityPairSpec(c1, c2, bound))
    perfect_b = check_perfect_pair(DualityPairSpec(d1, d2, bound))
    perfect_mono_epi = check_perfect_pair(specs["mono-epi"])
    perfect_comp = check_perfect_pair(specs["componentwise"])
    components_perfect = _holds(perfect_a) and _holds(perfect_b)

    if tor.verdict is Verdict.PASS:
        agree = _holds(perfect_mono_epi) == components_perfect
        eq_mono = CheckReport(
            "perfect-equivalence(mono-epi)",
            Verdict.CONSISTENT if agree else Verdict.REFUTED,
            detail=f"tuple-side={_holds(perfect_mono_epi)}, "
                   f"component-side={components_perfect}")
    else:
        eq_mono = CheckReport(
            "perfect-equivalence(mono-epi)", Verdict.HYPOTHESIS_FAILURE,
            detail="torsion hypothesis failed; equivalence not guaranteed")

    m_left = ctx.m.as_left_module
    n_left = ctx.n.as_left_module
    conditions = d1.contains(m_left) and c1.contains(n_left)
    condition_row = CheckReport(
        "input:bimodule-membership",
        Verdict.PASS if conditions else Verdict.REFUTED,
        detail="first inner bimodule in the second left class and second "
               "inner bimodule in the first left class",
        witnesses=[] if conditions else [
            {"object": _describe(obj), "class": oracle.name}
            for obj, oracle in ((m_left, d1), (n_left, c1))
            if not oracle.contains(obj)])
    comp_side = conditions and components_perfect
    agree2 = _holds(perfect_comp) == comp_side
    eq_comp = CheckReport(
        "perfect-equivalence(componentwise)",
        Verdict.CONSISTENT if agree2 else Verdict.REFUTED,
        detail=f"tuple-side={_holds(perfect_comp)}, component-side={comp_side} "
               f"(membership conditions {conditions})")

    decision = [tor, eq_mono, eq_comp]
    folded = CheckReport.combine("perfect-transfer", decision)
    return CheckReport(
        name="perfect-transfer",
        verdict=folded.verdict,
        detail=f"perfection equivalences at bound {bound}",
        clauses=[_as_input(perfect_a), _as_input(perfect_b),
                 _as_input(perfect_mono_epi), _as_input(perfect_comp),
                 condition_row, tor, eq_mono, eq_comp],
        meta={"bound": bound})


def check_complete_transfer(ctx: MoritaContext, c1, c2, d1, d2,
                            bound: int) -> CheckReport:
    """Completeness transfers like perfection, under projectivity hypotheses.

    The mono/epi equivalence needs both inner bimodules finitely generated
    projective on their one-sided ring; the componentwise equivalence again
    trades that for membership of the bimodules in the left classes.
    """
    _component_quad(ctx, c1, c2, d1, d2)
    specs = _tuple_pair_specs(ctx, c1, c2, d1, d2, bound)

    n_right_proj = is_projective(ctx.n.as_right_module)
    m_right_proj = is_projective(ctx.m.as_right_module)
    hyp = CheckReport(
        "inner-bimodules-projective",
        Verdict.PASS if (n_right_proj and m_right_proj)
        else Verdict.HYPOTHESIS_FAILURE,
        detail=f"second-inner right projective: {n_right_proj}, "
               f"first-inner right projective: {m_right_proj}")

    complete_a = check_complete_pair(DualityPairSpec(c1, c2, bound))
    complete_b = check_complete_pair(DualityPairSpec(d1, d2, bound))
    complete_mono_epi = check_complete_pair(specs["mono-epi"])
    complete_comp = check_complete_pair(specs["componentwise"])
    components_complete = _holds(complete_a) and _holds(complete_b)

    if hyp.verdict is Verdict.PASS:
        agree = _holds(complete_mono_epi) == components_complete
        eq_mono = CheckReport(
            "complete-equivalence(mono-epi)",
            Verdict.CONSISTENT if agree else Verdict.REFUTED,
            detail=f"tuple-side={_holds(complete_mono_epi)}, "
                   f"component-side={components_complete}")
    else:
        eq_mono = CheckReport(
            "complete-equivalence(mono-epi)", Verdict.HYPOTHESIS_FAILURE,
            detail="projectivity hypothesis failed; equivalence not guaranteed")

    conditions = d1.contains(ctx.m.as_left_module) \
        and c1.contains(ctx.n.as_left_module)
    comp_side = conditions and components_complete
    agree2 = _holds(complete_comp) == comp_side
    eq_comp = CheckReport(
        "complete-equivalence(componentwise)",
        Verdict.CONSISTENT if agree2 else Verdict.REFUTED,
        detail=f"tuple-side={_holds(complete_comp)}, component-side={comp_side} "
               f"(membership conditions {conditions})")

    folded = CheckReport.combine("complete-transfer", [hyp, eq_mono, eq_comp])
    return CheckReport(
        name="complete-transfer",
        verdict=folded.verdict,
        detail=f"completeness equivalences at bound {bound}",
        clauses=[_as_input(complete_a), _as_input(complete_b),
                 _as_input(complete_mono_epi), _as_input(complete_comp),
                 hyp, eq_mono, eq_comp],
        meta={"bound": bound})


def check_class_agreement(left: ClassOracle, first: ClassOracle,
                          second: ClassOracle, bound: int) -> CheckReport:
    """Two right halves completing the same left class coincide.

    The agreement scan always runs; if either input pair fails its
    completeness check the verdict degrades to hypothesis-failure instead of
    pass, but a genuine disagreement is still reported as refuted.
    """
    spec_first = DualityPairSpec(left, first, bound)
    spec_second = DualityPairSpec(left, second, bound)
    complete_first = check_complete_pair(spec_first)
    complete_second = check_complete_pair(spec_second)

    witness = None
    for obj in universe_of(first.ring, first.side, bound):
        if first.contains(obj) != second.contains(obj):
            witness = obj
            break
    if witness is not None:
        verdict = Verdict.REFUTED
    elif _holds(complete_first) and _holds(complete_second):
        verdict = Verdict.PASS
    else:
        verdict = Verdict.HYPOTHESIS_FAILURE
    agreement = CheckReport(
        "membership-agreement", Verdict.PASS if witness is None
        else Verdict.REFUTED,
        detail=f"both right classes scanned up to the bound {bound}",
        witnesses=[] if witness is None else [
            {"object": _describe(witness),
             "first": first.contains(witness),
             "second": second.contains(witness)}])
    return CheckReport(
        name=f"right-half-uniqueness({first.name} vs {second.name})",
        verdict=verdict,
        detail="completeness of both pairs is a hypothesis, agreement is the claim",
        clauses=[_as_input(complete_first), _as_input(complete_second),
                 agreement],
        meta={"bound": bound})


def check_injective_structure(ctx: MoritaContext, bound: int) -> CheckReport:
    """Absolutely pure tuples on the co-module side match the epi class.

    Over these finite-dimensional algebras absolute purity coincides with
    injectivity, so the check compares injectivity of each enumerated tuple
    against epi-class membership with injective component classes on the
    opposite side of the base ring.
    """
    n_right_proj = is_projective(ctx.n.as_right_module)
    m_right_proj = is_projective(ctx.m.as_right_module)
    hyp = CheckReport(
        "inner-bimodules-projective",
        Verdict.PASS if (n_right_proj and m_right_proj)
        else Verdict.HYPOTHESIS_FAILURE,
        detail=f"second-inner right projective: {n_right_proj}, "
               f"first-inner right projective: {m_right_proj}; coherence is "
               "automatic at finite dimension")
    class_a = builtin_oracles(ctx.algebra_a, RIGHT)["fp-injective"]
    class_b = builtin_oracles(ctx.algebra_b, RIGHT)["fp-injective"]
    witness = None
    for v in enumerate_delta_modules(ctx, RIGHT, bound):
        if is_injective_delta(v) != in_epi_class(v, class_a, class_b):
            witness = v
            break
    decision = CheckReport(
        "injective-iff-epi-class",
        Verdict.PASS if witness is None else Verdict.REFUTED,
        detail=f"exhaustive over tuples with component dims up to {bound}",
        witnesses=[] if witness is None else [{"object": _describe(witness)}])
    if hyp.verdict is not Verdict.PASS and decision.verdict is Verdict.PASS:
        decision = CheckReport(decision.name, Verdict.HYPOTHESIS_FAILURE,
                               decision.detail)
    return CheckReport.combine(
        "injective-tuple-structure", [hyp, decision],
        detail="transposed maps surjective with absolutely pure kernels",
        meta={"bound": bound})
