"""Resolution windows and the transported Gorenstein checks.

The dual-numbers corner of E2 is the interesting case: the simple has an
unbounded periodic resolution, the algebra is self-injective, and the window
machinery has to splice resolutions with coresolutions without losing
exactness.
"""

import numpy as np
import pytest

from moritalab.algebra import LEFT, Module
from moritalab.classes import builtin_oracles
from moritalab.enumeration import enumerate_delta_modules
from moritalab.functors import induce_from_a
from moritalab.gorenstein import (
    check_ding_transport,
    check_window_transport_backward,
    check_window_transport_forward,
    complete_resolution_window,
    exactness_table,
    flat_test_oracle,
    injective_coresolution,
    injective_dimension_within,
    is_ding_projective_window,
    is_gorenstein_projective_window,
    projective_dimension_within,
    projective_resolution,
)
from moritalab.report import Verdict, WindowConstructionError

from moritalab import linalg as la


def simple(ctx):
    return Module(ctx.algebra_a, LEFT, 1,
                  np.array([[[1]], [[0]]], dtype=np.int64), name="k")


def test_resolution_of_the_simple_is_periodic(e2):
    k = simple(e2)
    res, aug = projective_resolution(k, 3)
    assert res.lo == -3 and res.hi == 0
    assert res.dims() == [2, 2, 2, 2]
    assert la.rank(aug.matrix, 2) == 1
    for pos, exact in exactness_table(res):
        assert exact, f"resolution fails exactness at {pos}"


def test_coresolution_mirrors_the_resolution(e2):
    k = simple(e2)
    cores, coaug = injective_coresolution(k, 3)
    assert cores.lo == 0 and cores.hi == 3
    assert cores.dims() == [2, 2, 2, 2]
    assert la.rank(coaug.matrix, 2) == 1


def test_projective_dimensions(e1, e2):
    k = simple(e2)
    assert projective_dimension_within(k) is None        # unbounded
    assert projective_dimension_within(
        e2.algebra_a.regular_module(LEFT)) == 0
    assert injective_dimension_within(k) is None
    for semisimple_module in (simple(e1),
                              e1.algebra_a.regular_module(LEFT)):
        assert projective_dimension_within(semisimple_module) == 0


def test_window_of_the_simple(e2):
    k = simple(e2)
    cx = complete_resolution_window(k, 4)
    assert cx.lo == -4 and cx.hi == 4
    assert cx.dims() == [2] * 9
    assert all(exact for _, exact in exactness_table(cx))


def test_window_of_the_zero_module(e2):
    zero = Module(e2.algebra_a, LEFT, 0,
                  np.zeros((2, 0, 0), dtype=np.int64))
    cx = complete_resolution_window(zero, 2)
    assert cx.dims() == [0] * 5


def test_window_width_must_be_positive(e2):
    from moritalab.report import ValidationError
    with pytest.raises(ValidationError):
        complete_resolution_window(simple(e2), 0)


def test_transported_window_for_an_induced_tuple(e2):
    ta = induce_from_a(e2, simple(e2))
    cx = complete_resolution_window(ta, 4)
    assert cx.dims() == [4] * 9
    assert all(exact for _, exact in exactness_table(cx))


def test_some_tuples_admit_no_window(e1):
    # the glued ring of E1 is radical-square-zero and not self-injective,
    # so coresolutions leave the projectives for some tuples
    failures = 0
    for v in enumerate_delta_modules(e1, LEFT, 1):
        try:
            complete_resolution_window(v, 2)
        except WindowConstructionError as err:
            failures += 1
            assert "no projective coresolution" in str(err)
    assert failures > 0


def test_gorenstein_window_consistent_against_flat_tests(e2):
    k = simple(e2)
    flat = builtin_oracles(e2.algebra_a, LEFT)["flat"]
    verdict = is_gorenstein_projective_window(k, flat, 4, 2)
    assert verdict.consistent
    assert verdict.report.verdict is Verdict.CONSISTENT
    assert verdict.width == 4


def test_gorenstein_window_refuted_against_all_tests(e2):
    k = simple(e2)
    everything = builtin_oracles(e2.algebra_a, LEFT)["all"]
    verdict = is_gorenstein_projective_window(k, everything, 4, 2)
    assert not verdict.consistent
    assert verdict.report.verdict is Verdict.REFUTED
    assert verdict.failing_test is not None
    assert verdict.homology
    clause = next(c for c in verdict.report.clauses
                  if c.name == "window-hom-exactness")
    witness = clause.witnesses[0]
    assert witness["homology-dimension"] >= 1


def test_ding_window_for_the_induced_simple(e2):
    ta = induce_from_a(e2, simple(e2))
    verdict = is_ding_projective_window(ta, 4, 2)
    assert verdict.consistent
    oracle = flat_test_oracle(ta)
    from moritalab.morita import flat_characterisation
    tests = [t for t in verdict.test_modules]
    assert tests
    for t in tests:
        assert oracle.contains(t)
        assert flat_characterisation(t)


def test_transport_forward_and_backward(e2):
    k = simple(e2)
    flat_a = builtin_oracles(e2.algebra_a, LEFT)["flat"]
    flat_b = builtin_oracles(e2.algebra_b, LEFT)["flat"]
    forward = check_window_transport_forward(e2, k, flat_a, flat_b, 4, 2)
    assert forward.verdict is Verdict.CONSISTENT, forward.detail
    names = [c.name for c in forward.clauses]
    assert "adjunction-dimension-cross-check" in names
    adj = next(c for c in forward.clauses
               if c.name == "adjunction-dimension-cross-check")
    assert adj.verdict is Verdict.PASS

    image = forward.window_complex
    backward = check_window_transport_backward(
        e2, induce_from_a(e2, k), flat_a, flat_b, 4, 2, window=image)
    assert backward.verdict is Verdict.CONSISTENT, backward.detail


def test_transport_premise_failure_degrades_to_hypothesis(e2):
    # feed a module whose own window is dirty for the chosen test class:
    # the simple against the class of all modules cannot pass, and the
    # forward harness must not claim refutation of the transport itself
    k = simple(e2)
    everything_a = builtin_oracles(e2.algebra_a, LEFT)["all"]
    flat_b = builtin_oracles(e2.algebra_b, LEFT)["flat"]
    report = check_window_transport_forward(e2, k, everything_a, flat_b, 4, 2)
    assert report.verdict is Verdict.HYPOTHESIS_FAILURE


def test_ding_transport_smoke(e1):
    report = check_ding_transport(e1, 2, 1)
    assert report.ok, report.detail
    names = [c.name for c in report.clauses]
    for expected in ("induced-ding(a)", "induced-ding(b)",
                     "component-ding(a)", "component-ding(b)"):
        assert expected in names
