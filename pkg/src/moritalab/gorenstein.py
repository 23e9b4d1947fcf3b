"""Truncated complete resolutions and relative-projectivity window checks.

A complete resolution is a doubly infinite exact complex of projectives that
stays exact after Hom into every member of a chosen test class.  Nothing
doubly infinite fits in memory, so every check here works on a window: a
finite stretch of positions centred on the kernel being classified.  A clean
window yields the verdict "consistent up to this width", never a proof; a
dirty window yields an honest refutation that names the failing position and
test module, relative to the canonically constructed complex.

Windows over a glued matrix ring are built either by transporting component
windows through the induction functors (when the tuple splits as a sum of
induced pieces) or by the generic splice of a cover resolution with the dual
of a cover resolution of the dual.  The splice route raises
WindowConstructionError when some coresolution term fails to be projective;
that is a fact about the ring, not a refutation, and is reported as such.

The transport harnesses check that window verdicts travel along the
induction and restriction functors, with an adjunction dimension comparison
at every level as an independent cross-check.  The Ding variants are the
same checks run against the flat test class.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import (
    LEFT,
    Module,
    ModuleMap,
    dual_map,
    dual_module,
    free_cover,
    hom_space,
    is_projective,
    kernel_module,
    quotient_module,
)
from .classes import ClassOracle, builtin_oracles, in_mono_class
from .enumeration import enumerate_delta_modules, enumerate_modules
from .functors import (
    component_a,
    component_b,
    induce_from_a,
    induce_from_a_map,
    induce_from_b,
    induce_from_b_map,
)
from .morita import (
    DeltaModule,
    DeltaModuleMap,
    MoritaContext,
    delta_direct_sum,
    delta_dual,
    delta_dual_map,
    delta_hom_space,
    delta_is_isomorphic,
    delta_kernel,
    is_projective_delta,
)
from .report import (
    CheckReport,
    InternalCheckError,
    ValidationError,
    Verdict,
    WindowConstructionError,
)
from .tensor import hom_over_algebra, tensor_over_algebra

DIM_CUTOFF = 8


# ---------------------------------------------------------------------------
# carrier dispatch

def _is_tuple(obj) -> bool:
    return isinstance(obj, DeltaModule)


def _matrix_of(phi) -> np.ndarray:
    return phi.packed_matrix() if isinstance(phi, DeltaModuleMap) else phi.matrix


def _cover(obj):
    if _is_tuple(obj):
        return _delta_cover(obj)
    return free_cover(obj)


def _kernel_of(phi):
    if isinstance(phi, DeltaModuleMap):
        return delta_kernel(phi)
    return kernel_module(phi)


def _dual_of(obj):
    return delta_dual(obj) if _is_tuple(obj) else dual_module(obj)


def _dual_map_between(phi, dual_source, dual_target):
    if isinstance(phi, DeltaModuleMap):
        return delta_dual_map(phi, dual_source, dual_target)
    return dual_map(phi, dual_source, dual_target)


def _transpose_onto(phi, source, target):
    """Rebuild the transpose of phi between the given endpoints.

    Valid when the endpoints carry the same action matrices as the double
    duals; the map constructors re-verify equivariance.
    """
    if isinstance(phi, DeltaModuleMap):
        return DeltaModuleMap(source, target,
                              phi.a_matrix.T.copy(), phi.b_matrix.T.copy())
    return ModuleMap(source, target, phi.matrix.T.copy())


def _projective(obj) -> bool:
    return is_projective_delta(obj) if _is_tuple(obj) else is_projective(obj)


def _isomorphism(u, v):
    if _is_tuple(u):
        return delta_is_isomorphic(u, v)
    from .algebra import is_isomorphic
    return is_isomorphic(u, v)


def _homs(source, target):
    if _is_tuple(source):
        return delta_hom_space(source, target)
    return hom_space(source, target)


def _delta_cover(v: DeltaModule) -> tuple[DeltaModule, DeltaModuleMap]:
    """An epi onto v from a projective tuple.

    The source is the sum of the inductions of component covers; its packed
    module is a sum of principal summands of the glued algebra, so it is
    projective with no hypothesis on the inner bimodules.
    """
    ctx, p = v.context, v.p
    _, ex = free_cover(v.x)
    _, ey = free_cover(v.y)
    ta = induce_from_a(ctx, v.x)
    tb = induce_from_b(ctx, v.y)
    counit_a = DeltaModuleMap(ta, v, la.eye(v.x.dim), v.f_map.matrix)
    counit_b = DeltaModuleMap(tb, v, v.g_map.matrix, la.eye(v.y.dim))
    lift_a = counit_a.compose(induce_from_a_map(ctx, ex, target=ta))
    lift_b = counit_b.compose(induce_from_b_map(ctx, ey, target=tb))
    total, _, _ = delta_direct_sum([lift_a.source, lift_b.source])
    eps = DeltaModuleMap(
        total, v,
        np.hstack([lift_a.a_matrix, lift_b.a_matrix]) % p,
        np.hstack([lift_a.b_matrix, lift_b.b_matrix]) % p)
    if la.rank(eps.packed_matrix(), p) != v.dim:
        raise InternalCheckError("tuple cover failed to surject")
    return total, eps


def _block_diag(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    out = la.zeros(first.shape[0] + second.shape[0],
                   first.shape[1] + second.shape[1])
    out[:first.shape[0], :first.shape[1]] = first
    out[first.shape[0]:, first.shape[1]:] = second
    return out


# ---------------------------------------------------------------------------
# complexes

@dataclass(eq=False)
class ChainComplex:
    """A finite stretch of a cochain complex over integer positions.

    terms[i] sits at position lo + i and maps[i] joins terms[i] to
    terms[i + 1].  Consecutive maps must compose to zero and map endpoints
    must be the stored term objects themselves.
    """

    lo: int
    terms: list
    maps: list

    def __post_init__(self):
        if not self.terms:
            raise ValidationError("a window needs at least one term")
        if len(self.maps) != len(self.terms) - 1:
            raise ValidationError("a window with n terms needs n - 1 differentials")
        for i, d in enumerate(self.maps):
            if d.source is not self.terms[i] or d.target is not self.terms[i + 1]:
                raise ValidationError(
                    f"differential at position {self.lo + i} does not join its terms")
        p = self.terms[0].p
        for i in range(len(self.maps) - 1):
            squared = (_matrix_of(self.maps[i + 1]) @ _matrix_of(self.maps[i])) % p
            if np.any(squared):
                raise ValidationError(
                    f"consecutive differentials at position {self.lo + i} "
                    "do not compose to zero")

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    def positions(self) -> range:
        return range(self.lo, self.hi + 1)

    def term(self, pos: int):
        return self.terms[pos - self.lo]

    def diff(self, pos: int):
        """The differential leaving the given position."""
        return self.maps[pos - self.lo]

    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]


def exactness_table(cx: ChainComplex) -> list[tuple[int, bool]]:
    """(position, exact) at every inner position, by the rank identity."""
    p = cx.terms[0].p
    rows = []
    for pos in range(cx.lo + 1, cx.hi):
        arriving = la.rank(_matrix_of(cx.diff(pos - 1)), p)
        leaving = la.rank(_matrix_of(cx.diff(pos)), p)
        rows.append((pos, arriving + leaving == cx.term(pos).dim))
    return rows


def projective_resolution(x, length: int):
    """Resolution by iterated covers, as (window, augmentation).

    The window occupies positions -length .. 0; the augmentation is the epi
    from the position-0 term onto x.  Exact at every inner position by
    construction, and every term is a cover, hence projective.
    """
    if length < 0:
        raise ValidationError("resolution length must be nonnegative")
    covers, epis, inclusions = [], [], []
    target = x
    for _ in range(length + 1):
        cov, eps = _cover(target)
        ker, incl = _kernel_of(eps)
        covers.append(cov)
        epis.append(eps)
        inclusions.append(incl)
        target = ker
    terms = list(reversed(covers))
    maps = [inclusions[j - 1].compose(epis[j]) for j in range(length, 0, -1)]
    return ChainComplex(-length, terms, maps), epis[0]


def injective_coresolution(x, length: int):
    """Coresolution through the dual, as (window, coaugmentation).

    Terms occupy positions 0 .. length; the coaugmentation embeds x into the
    position-0 term.  Each term is the dual of a cover of the dual side, so
    it is injective; nothing here requires the terms to be projective.
    """
    res, aug = projective_resolution(_dual_of(x), length)
    terms = [_dual_of(t) for t in reversed(res.terms)]
    maps = []
    for j in range(length):
        maps.append(_dual_map_between(res.diff(-(j + 1)), terms[j], terms[j + 1]))
    coaug = _transpose_onto(aug, x, terms[0])
    return ChainComplex(0, terms, maps), coaug


def projective_dimension_within(x, cutoff: int = DIM_CUTOFF) -> int | None:
    """Steps until a syzygy turns projective, or None past the cutoff."""
    current = x
    for n in range(cutoff + 1):
        if _projective(current):
            return n
        _, eps = _cover(current)
        current = _kernel_of(eps)[0]
    return None


def injective_dimension_within(x, cutoff: int = DIM_CUTOFF) -> int | None:
    """Injective dimension through the dual; duality swaps the two kinds."""
    return projective_dimension_within(_dual_of(x), cutoff)


def complete_resolution_window(x, w: int) -> ChainComplex:
    """A width-w stretch of a complete resolution with x as the kernel at 0.

    Positions run -w .. w and x is the kernel of the differential leaving
    position 0.  Tuples are first attempted by transport: when the tuple is a
    sum of pieces induced from its structural cokernels, component windows
    are induced levelwise and summed.  Otherwise (and always for plain
    modules) the window splices a cover resolution with the dualised cover
    resolution of the dual; that route needs every coresolution term to be
    projective and raises WindowConstructionError when one is not.
    """
    if w < 1:
        raise ValidationError("window width must be at least 1")
    if _is_tuple(x):
        split = _tuple_splitting(x)
        if split is not None:
            try:
                return _transported_window(x, split, w)
            except WindowConstructionError:
                pass
    return _spliced_window(x, w)


def _spliced_window(x, w: int) -> ChainComplex:
    res, aug = projective_resolution(x, w - 1)
    cores, coaug = injective_coresolution(x, w)
    for pos, term in enumerate(cores.terms):
        if not _projective(term):
            raise WindowConstructionError(
                "no projective coresolution within window: the term at "
                f"position {pos} ({term.describe()}) is not projective")
    junction = coaug.compose(aug)
    cx = ChainComplex(-w, res.terms + cores.terms,
                      res.maps + [junction] + cores.maps)
    _verify_window(cx, x)
    return cx


def _tuple_splitting(v: DeltaModule):
    """The structural cokernels (x/im g, y/im f) when they rebuild v.

    Returns None when the sum of their induced tuples is not isomorphic to
    v; the transported window only makes sense for genuine sums.
    """
    ctx, p = v.context, v.p
    p0 = quotient_module(v.x, la.image_basis(v.g_map.matrix, p).T)[0]
    q0 = quotient_module(v.y, la.image_basis(v.f_map.matrix, p).T)[0]
    candidate = delta_direct_sum([induce_from_a(ctx, p0),
                                  induce_from_b(ctx, q0)])[0]
    if delta_is_isomorphic(candidate, v) is None:
        return None
    return p0, q0


def _transported_window(v: DeltaModule, split, w: int) -> ChainComplex:
    ctx = v.context
    p0, q0 = split
    wa = _spliced_window(p0, w)
    wb = _spliced_window(q0, w)
    ta_terms = [induce_from_a(ctx, t) for t in wa.terms]
    tb_terms = [induce_from_b(ctx, t) for t in wb.terms]
    ta_maps = [induce_from_a_map(ctx, d, source=ta_terms[i], target=ta_terms[i + 1])
               for i, d in enumerate(wa.maps)]
    tb_maps = [induce_from_b_map(ctx, d, source=tb_terms[i], target=tb_terms[i + 1])
               for i, d in enumerate(wb.maps)]
    terms = [delta_direct_sum([u, t])[0] for u, t in zip(ta_terms, tb_terms)]
    maps = []
    for i in range(len(terms) - 1):
        maps.append(DeltaModuleMap(
            terms[i], terms[i + 1],
            _block_diag(ta_maps[i].a_matrix, tb_maps[i].a_matrix),
            _block_diag(ta_maps[i].b_matrix, tb_maps[i].b_matrix)))
    cx = ChainComplex(-w, terms, maps)
    _verify_window(cx, v)
    return cx


def _verify_window(cx: ChainComplex, x) -> None:
    for pos, ok in exactness_table(cx):
        if not ok:
            raise WindowConstructionError(f"window is not exact at position {pos}")
    for pos in cx.positions():
        if not _projective(cx.term(pos)):
            raise WindowConstructionError(
                f"window term at position {pos} is not projective")
    kernel = _kernel_of(cx.diff(0))[0]
    if _isomorphism(kernel, x) is None:
        raise WindowConstructionError(
            "the kernel at position 0 is not the resolved object")


# ---------------------------------------------------------------------------
# window verdicts

@dataclass(eq=False)
class WindowVerdict:
    """Outcome of a relative-projectivity window check.

    consistent means the window is clean up to its width; it is never a
    proof.  A refutation names the first failing position and, when the Hom
    stage failed, the test module together with the homology dimension seen
    there.  The refutation refers to the canonically constructed window.
    """

    width: int
    consistent: bool
    exactness: list[tuple[int, bool]] = field(default_factory=list)
    hom_exactness: list[tuple[str, bool]] = field(default_factory=list)
    failing_position: int | None = None
    failing_test: str | None = None
    homology: dict | None = None
    window: ChainComplex | None = None
    test_modules: list = field(default_factory=list)
    report: CheckReport | None = None


def _hom_complex_data(cx: ChainComplex, test):
    """Hom bases levelwise and the homology dimensions of Hom(cx, test).

    Applying Hom(-, test) reverses the differentials; homology is reported
    at inner positions of the original window.
    """
    p = test.p
    bases = [_homs(t, test) for t in cx.terms]
    vec_bases = [[b.coord_vector() for b in basis] for basis in bases]
    induced = []
    for i, d in enumerate(cx.maps):
        mat = la.zeros(len(bases[i]), len(bases[i + 1]))
        for k, psi in enumerate(bases[i + 1]):
            coords = la.coords_in_span(vec_bases[i], psi.compose(d).coord_vector(), p)
            if coords is None:
                raise InternalCheckError("hom basis failed to span a composite")
            mat[:, k] = coords
        induced.append(mat)
    homology = []
    for j in range(1, len(bases) - 1):
        arriving = la.rank(induced[j], p)
        leaving = la.rank(induced[j - 1], p)
        h = len(bases[j]) - arriving - leaving
        if h < 0:
            raise InternalCheckError("negative homology dimension")
        homology.append((cx.lo + j, h))
    return bases, homology


def _window_report(x, cx: ChainComplex, test_class: ClassOracle,
                   bound: int) -> WindowVerdict:
    """Verdict for a given window against the sampled test class."""
    width = cx.hi
    exact_rows = exactness_table(cx)
    bad_exact = [pos for pos, ok in exact_rows if not ok]
    clause_exact = CheckReport(
        "window-exactness",
        Verdict.PASS if not bad_exact else Verdict.REFUTED,
        detail=f"rank identities at positions {cx.lo + 1}..{cx.hi - 1}",
        witnesses=[{"position": pos} for pos in bad_exact])

    bad_proj = [pos for pos in cx.positions() if not _projective(cx.term(pos))]
    clause_proj = CheckReport(
        "window-terms-projective",
        Verdict.PASS if not bad_proj else Verdict.REFUTED,
        witnesses=[{"position": pos, "term": cx.term(pos).describe()}
                   for pos in bad_proj])

    kernel = _kernel_of(cx.diff(0))[0]
    kernel_ok = _isomorphism(kernel, x) is not None
    clause_kernel = CheckReport(
        "window-kernel-identification",
        Verdict.PASS if kernel_ok else Verdict.REFUTED,
        detail="the kernel leaving position 0 is isomorphic to the checked object")

    tests = test_class.sample(bound)
    hom_rows = []
    failing = None
    for test in tests:
        _, homology = _hom_complex_data(cx, test)
        dirty = [(pos, h) for pos, h in homology if h]
        hom_rows.append((test.describe(), not dirty))
        if dirty and failing is None:
            failing = {"test": test.describe(),
                       "position": dirty[0][0],
                       "homology-dimension": dirty[0][1]}
    clause_hom = CheckReport(
        "window-hom-exactness",
        Verdict.CONSISTENT if failing is None else Verdict.REFUTED,
        detail=f"{len(tests)} test modules sampled at bound {bound}; "
               "a clean window is consistency, not proof",
        witnesses=[failing] if failing else [])

    report = CheckReport.combine(
        f"window[{x.describe()}]",
        [clause_exact, clause_proj, clause_kernel, clause_hom],
        detail=f"width {width}, test class {test_class.name}",
        meta={"width": width, "dims": cx.dims(), "tests": len(tests)})
    consistent = report.verdict in (Verdict.PASS, Verdict.CONSISTENT)
    first_bad = bad_exact[0] if bad_exact else (
        failing["position"] if failing else None)
    return WindowVerdict(
        width=width,
        consistent=consistent,
        exactness=exact_rows,
        hom_exactness=hom_rows,
        failing_position=first_bad,
        failing_test=failing["test"] if failing else None,
        homology=failing,
        window=cx,
        test_modules=tests,
        report=report)


_VERDICT_CACHE: dict = {}


def is_gorenstein_projective_window(x, test_class: ClassOracle, w: int,
                                    bound: int) -> WindowVerdict:
    """Window check for relative projectivity against a test class.

    Builds the canonical width-w window around x, re-verifies exactness and
    term projectivity, identifies the kernel at position 0, and checks
    Hom-exactness against every sampled member of the test class.  Window
    construction failures propagate as WindowConstructionError.
    """
    key = (id(x), id(test_class), w, bound)
    hit = _VERDICT_CACHE.get(key)
    if hit is not None and hit[0] is x and hit[1] is test_class:
        return hit[2]
    verdict = _window_report(x, complete_resolution_window(x, w),
                             test_class, bound)
    _VERDICT_CACHE[key] = (x, test_class, verdict)
    return verdict


_FLAT_ORACLE_CACHE: dict = {}


def flat_test_oracle(obj) -> ClassOracle:
    """The flat test class of the carrier of obj.

    For a tuple carrier the sample is widened with inductions of flat
    components and their pairwise sums; all candidates are filtered through
    the flatness oracle itself, so the widening never changes the class.
    """
    if not _is_tuple(obj):
        return builtin_oracles(obj.algebra, obj.side)["flat"]
    ctx, side = obj.context, obj.side
    key = (id(ctx), side)
    hit = _FLAT_ORACLE_CACHE.get(key)
    if hit is not None and hit[0] is ctx:
        return hit[1]
    base = builtin_oracles(ctx, side)["flat"]
    flat_a = builtin_oracles(ctx.algebra_a, side)["flat"]
    flat_b = builtin_oracles(ctx.algebra_b, side)["flat"]

    def sample(bound: int) -> list:
        pool = _induced_test_pool(ctx, flat_a, flat_b, bound)
        pool.extend(enumerate_delta_modules(ctx, side, bound))
        return [v for v in pool if base.contains(v)]

    oracle = ClassOracle(base.name + "/widened", ctx, side, base.member, sample)
    _FLAT_ORACLE_CACHE[key] = (ctx, oracle)
    return oracle


def _induced_test_pool(ctx: MoritaContext, class_a: ClassOracle,
                       class_b: ClassOracle, bound: int) -> list:
    """Inductions of sampled members of the component classes, plus sums."""
    singles = [induce_from_a(ctx, c) for c in class_a.sample(bound)]
    singles += [induce_from_b(ctx, d) for d in class_b.sample(bound)]
    pool = list(singles)
    for i in range(len(singles)):
        for j in range(i + 1, len(singles)):
            pool.append(delta_direct_sum([singles[i], singles[j]])[0])
    return pool


_MONO_ORACLE_CACHE: dict = {}


def mono_class_test_oracle(ctx: MoritaContext, class_a: ClassOracle,
                           class_b: ClassOracle) -> ClassOracle:
    """Test oracle for the mono-structured tuple class over the components.

    Membership is the structural test; the sample pools inductions of
    component members, their pairwise sums, and enumerated tuples, then
    filters through membership.  Inductions of members land in the class
    because their structure maps are isomorphisms onto one component.
    """
    key = (id(ctx), id(class_a), id(class_b))
    hit = _MONO_ORACLE_CACHE.get(key)
    if hit is not None and hit[0] is ctx and hit[1] is class_a and hit[2] is class_b:
        return hit[3]
    side = class_a.side

    def member(v: DeltaModule) -> bool:
        return in_mono_class(v, class_a, class_b)

    def sample(bound: int) -> list:
        pool = _induced_test_pool(ctx, class_a, class_b, bound)
        pool.extend(enumerate_delta_modules(ctx, side, bound))
        return [v for v in pool if member(v)]

    name = f"mono-class[{class_a.name}, {class_b.name}]/widened"
    oracle = ClassOracle(name, ctx, side, member, sample)
    _MONO_ORACLE_CACHE[key] = (ctx, class_a, class_b, oracle)
    return oracle


def is_ding_projective_window(x, w: int, bound: int) -> WindowVerdict:
    """The window check taken against the flat test class of the carrier."""
    return is_gorenstein_projective_window(x, flat_test_oracle(x), w, bound)


# ---------------------------------------------------------------------------
# transport harnesses

def _class_row(name: str, ok: bool, detail: str = "",
               witnesses: list | None = None) -> CheckReport:
    return CheckReport(name, Verdict.PASS if ok else Verdict.HYPOTHESIS_FAILURE,
                       detail=detail, witnesses=witnesses or [])


def _as_input(report: CheckReport) -> CheckReport:
    return CheckReport("input:" + report.name, report.verdict,
                       detail=report.detail, witnesses=report.witnesses,
                       hypotheses=report.hypotheses, clauses=report.clauses,
                       meta=report.meta)


def check_window_transport_forward(ctx: MoritaContext, x: Module,
                                   class_a: ClassOracle, class_b: ClassOracle,
                                   w: int, bound: int,
                                   functor: str = "a") -> CheckReport:
    """Induction carries a clean component window to a clean tuple window.

    Builds the canonical window of x over its component algebra, applies the
    chosen induction functor levelwise, and re-verifies the image complex:
    terms projective over the glued ring, exact, kernel identified with the
    induced tuple, Hom-exact against the widened mono-class sample.  An
    adjunction dimension comparison at every level for every test tuple
    cross-checks the Hom computations.  Hypothesis failures are reported
    separately from conclusion failures.
    """
    if functor not in ("a", "b"):
        raise ValidationError("functor must be 'a' or 'b'")
    induce = induce_from_a if functor == "a" else induce_from_b
    induce_map = induce_from_a_map if functor == "a" else induce_from_b_map
    own_class = class_a if functor == "a" else class_b
    other_class = class_b if functor == "a" else class_a
    inner = ctx.n if functor == "a" else ctx.m
    component_of = component_a if functor == "a" else component_b

    hyp_rows = []
    fg_ok = (is_projective(ctx.n.as_right_module)
             and is_projective(ctx.m.as_right_module))
    hyp_rows.append(_class_row(
        "inner-bimodules-projective-on-the-right", fg_ok,
        detail="finitely generated is automatic at finite dimension"))
    bad_tensor = []
    for d in other_class.sample(bound):
        image = tensor_over_algebra(inner, d).module
        if not own_class.contains(image):
            bad_tensor.append({"object": d.describe(),
                               "image": image.describe()})
    hyp_rows.append(_class_row(
        "inner-tensor-stays-in-component-class", not bad_tensor,
        detail=f"checked on the class sample at bound {bound}",
        witnesses=bad_tensor))

    premise = is_gorenstein_projective_window(x, own_class, w, bound)
    premise_gate = CheckReport(
        "component-window-premise",
        Verdict.PASS if premise.consistent else Verdict.HYPOTHESIS_FAILURE,
        detail="the transport is only probed on a clean component window",
        clauses=[_as_input(premise.report)])
    if not premise.consistent:
        return CheckReport.combine(
            "window-transport-forward", hyp_rows + [premise_gate],
            meta={"functor": functor, "width": w, "bound": bound})

    cx = premise.window
    terms = [induce(ctx, t) for t in cx.terms]
    maps = [induce_map(ctx, d, source=terms[i], target=terms[i + 1])
            for i, d in enumerate(cx.maps)]
    image_cx = ChainComplex(cx.lo, terms, maps)
    target = induce(ctx, x)

    test_class = mono_class_test_oracle(ctx, class_a, class_b)
    image_verdict = _window_report(target, image_cx, test_class, bound)

    bad_adjunction = []
    for test in image_verdict.test_modules:
        restricted = component_of(test)
        for i, term in enumerate(image_cx.terms):
            glued_dim = len(delta_hom_space(term, test))
            plain_dim = len(hom_space(cx.terms[i], restricted))
            if glued_dim != plain_dim:
                bad_adjunction.append({
                    "position": cx.lo + i, "test": test.describe(),
                    "glued-side": glued_dim, "component-side": plain_dim})
    clause_adjunction = CheckReport(
        "adjunction-dimension-cross-check",
        Verdict.PASS if not bad_adjunction else Verdict.REFUTED,
        detail="hom spaces out of induced terms match hom spaces out of the "
               "component terms into the restriction, at every level",
        witnesses=bad_adjunction[:4])

    out = CheckReport.combine(
        "window-transport-forward",
        hyp_rows + [premise_gate] + list(image_verdict.report.clauses)
        + [clause_adjunction],
        detail=f"functor t_{functor}, width {w}, bound {bound}",
        meta={"functor": functor, "width": w, "bound": bound,
              "image-dims": image_cx.dims()})
    out.window_complex = image_cx
    return out


def check_window_transport_backward(ctx: MoritaContext, v: DeltaModule,
                                    class_a: ClassOracle, class_b: ClassOracle,
                                    w: int, bound: int,
                                    functor: str = "a",
                                    cutoff: int = DIM_CUTOFF,
                                    window: ChainComplex | None = None) -> CheckReport:
    """Restriction carries a clean tuple window back to a component window.

    Takes the tuple's canonical window (or a supplied one, so the check can
    run on the exact complex another harness produced), restricts it
    levelwise to the chosen component, and re-verifies the restricted
    complex as a window for the component of v.  The inner-hom injective
    dimension hypothesis is operationalised as termination of a coresolution
    within the cutoff, and the cutoff is reported.
    """
    if functor not in ("a", "b"):
        raise ValidationError("functor must be 'a' or 'b'")
    own_class = class_a if functor == "a" else class_b
    other_class = class_b if functor == "a" else class_a
    inner_left = ctx.n if functor == "a" else ctx.m
    inner_right = ctx.m if functor == "a" else ctx.n

    hyp_rows = []
    proj_ok = (is_projective(ctx.n.as_left_module)
               and is_projective(ctx.m.as_left_module))
    hyp_rows.append(_class_row(
        "inner-bimodules-projective-on-the-left", proj_ok))
    bad_tensor = []
    for c in own_class.sample(bound):
        image = tensor_over_algebra(inner_right, c).module
        if not other_class.contains(image):
            bad_tensor.append({"object": c.describe(), "image": image.describe()})
    hyp_rows.append(_class_row(
        "inner-tensor-stays-in-component-class", not bad_tensor,
        detail=f"checked on the class sample at bound {bound}",
        witnesses=bad_tensor))
    dim_rows, dim_bad = [], []
    for c in own_class.sample(bound):
        inner_hom = hom_over_algebra(inner_left, c).module
        depth = injective_dimension_within(inner_hom, cutoff)
        dim_rows.append({"object": c.describe(),
                         "injective-dimension": depth if depth is not None
                         else f"exceeds cutoff {cutoff}"})
        if depth is None:
            dim_bad.append(dim_rows[-1])
    hyp_rows.append(CheckReport(
        "inner-hom-injective-dimension",
        Verdict.PASS if not dim_bad else Verdict.HYPOTHESIS_FAILURE,
        detail=f"coresolution termination within cutoff {cutoff}",
        witnesses=dim_bad, meta={"dimensions": dim_rows}))

    if window is None:
        window = complete_resolution_window(v, w)
    tuple_class = mono_class_test_oracle(ctx, class_a, class_b)
    premise = _window_report(v, window, tuple_class, bound)
    premise_gate = CheckReport(
        "tuple-window-premise",
        Verdict.PASS if premise.consistent else Verdict.HYPOTHESIS_FAILURE,
        detail="the restriction is only probed on a clean tuple window",
        clauses=[_as_input(premise.report)])
    if not premise.consistent:
        return CheckReport.combine(
            "window-transport-backward", hyp_rows + [premise_gate],
            meta={"functor": functor, "width": w, "bound": bound})

    if functor == "a":
        terms = [t.x for t in window.terms]
        maps = [ModuleMap(window.terms[i].x, window.terms[i + 1].x, d.a_matrix)
                for i, d in enumerate(window.maps)]
        piece = v.x
    else:
        terms = [t.y for t in window.terms]
        maps = [ModuleMap(window.terms[i].y, window.terms[i + 1].y, d.b_matrix)
                for i, d in enumerate(window.maps)]
        piece = v.y
    restricted = ChainComplex(window.lo, terms, maps)
    conclusion = _window_report(piece, restricted, own_class, bound)

    return CheckReport.combine(
        "window-transport-backward",
        hyp_rows + [premise_gate] + list(conclusion.report.clauses),
        detail=f"restriction u_{functor}, width {w}, bound {bound}, "
               f"cutoff {cutoff}",
        meta={"functor": functor, "width": w, "bound": bound,
              "restricted-dims": restricted.dims()})


def check_ding_transport(ctx: MoritaContext, w: int, bound: int,
                         cutoff: int = DIM_CUTOFF) -> CheckReport:
    """Ding window verdicts travel along induction and restriction.

    Four clause groups: inductions of flat-clean component modules stay
    clean over the glued ring (both sides), and restrictions of clean
    tuples have clean components (both sides), each under its own
    hypothesis row.  Samples are enumerated up to the bound; candidates
    whose window cannot be constructed are recorded and skipped rather
    than counted either way.
    """
    side = LEFT
    flat_a = builtin_oracles(ctx.algebra_a, side)["flat"]
    flat_b = builtin_oracles(ctx.algebra_b, side)["flat"]

    hyp_rows = [_class_row(
        "inner-bimodules-projective-on-the-right",
        is_projective(ctx.n.as_right_module)
        and is_projective(ctx.m.as_right_module))]

    def base_change_row(name, inner, source_class, target_class):
        bad = []
        for f in source_class.sample(bound):
            image = tensor_over_algebra(inner, f).module
            if not target_class.contains(image):
                bad.append({"object": f.describe(), "image": image.describe()})
        return _class_row(name, not bad,
                          detail=f"flat sample at bound {bound}", witnesses=bad)

    hyp_rows.append(base_change_row(
        "flat-base-change-through-first-inner", ctx.n, flat_b, flat_a))
    hyp_rows.append(base_change_row(
        "flat-base-change-through-second-inner", ctx.m, flat_a, flat_b))
    hyp_rows.append(_class_row(
        "inner-bimodules-projective-on-the-left",
        is_projective(ctx.n.as_left_module)
        and is_projective(ctx.m.as_left_module)))

    def hom_dimension_row(name, inner, source_class):
        bad, rows = [], []
        for f in source_class.sample(bound):
            depth = injective_dimension_within(
                hom_over_algebra(inner, f).module, cutoff)
            rows.append({"object": f.describe(),
                         "injective-dimension": depth if depth is not None
                         else f"exceeds cutoff {cutoff}"})
            if depth is None:
                bad.append(rows[-1])
        return CheckReport(
            name, Verdict.PASS if not bad else Verdict.HYPOTHESIS_FAILURE,
            detail=f"coresolution termination within cutoff {cutoff}",
            witnesses=bad, meta={"dimensions": rows})

    hyp_rows.append(hom_dimension_row(
        "inner-hom-injective-dimension-first", ctx.n, flat_a))
    hyp_rows.append(hom_dimension_row(
        "inner-hom-injective-dimension-second", ctx.m, flat_b))

    skipped = []

    def ding_or_none(obj):
        try:
            return is_ding_projective_window(obj, w, bound)
        except WindowConstructionError as err:
            entry = {"object": obj.describe(), "reason": str(err)}
            if entry not in skipped:
                skipped.append(entry)
            return None

    clean_tuples = []

    def induced_clause(name, universe, induce):
        bad, checked = [], 0
        for m in universe:
            component_verdict = ding_or_none(m)
            if component_verdict is None or not component_verdict.consistent:
                continue
            image = induce(ctx, m)
            image_verdict = ding_or_none(image)
            if image_verdict is None:
                continue
            checked += 1
            clean_tuples.append(image)
            if not image_verdict.consistent:
                bad.append({"object": m.describe(),
                            "image": image.describe(),
                            "position": image_verdict.failing_position,
                            "test": image_verdict.failing_test})
        return CheckReport(
            name, Verdict.CONSISTENT if not bad else Verdict.REFUTED,
            detail=f"{checked} clean component modules transported",
            witnesses=bad)

    clause_a = induced_clause("induced-ding(a)",
                              enumerate_modules(ctx.algebra_a, side, bound),
                              induce_from_a)
    clause_b = induced_clause("induced-ding(b)",
                              enumerate_modules(ctx.algebra_b, side, bound),
                              induce_from_b)

    def component_clause(name, component_of):
        bad, checked = [], 0
        pool = clean_tuples + [
            v for v in enumerate_delta_modules(ctx, side, bound)
            if (verdict := ding_or_none(v)) is not None and verdict.consistent]
        for v in pool:
            piece = component_of(v)
            piece_verdict = ding_or_none(piece)
            if piece_verdict is None:
                continue
            checked += 1
            if not piece_verdict.consistent:
                bad.append({"object": v.describe(),
                            "component": piece.describe(),
                            "position": piece_verdict.failing_position,
                            "test": piece_verdict.failing_test})
        return CheckReport(
            name, Verdict.CONSISTENT if not bad else Verdict.REFUTED,
            detail=f"{checked} clean tuples restricted",
            witnesses=bad)

    clause_ua = component_clause("component-ding(a)", component_a)
    clause_ub = component_clause("component-ding(b)", component_b)

    return CheckReport.combine(
        "ding-window-transport",
        hyp_rows + [clause_a, clause_b, clause_ua, clause_ub],
        detail=f"width {w}, bound {bound}",
        meta={"width": w, "bound": bound, "skipped": skipped})
