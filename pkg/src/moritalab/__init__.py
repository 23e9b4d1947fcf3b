"""Exact module theory over two-by-two matrix rings glued from bimodules.

The package works entirely over small prime fields with integer matrices,
so every verdict is exact.  Start from a workspace file or a shipped
fixture, then drive the functor, duality-pair, and window checks either
through the API or the `morita-lab` command.
"""

from .algebra import (
    LEFT,
    RIGHT,
    Algebra,
    Bimodule,
    FieldSpec,
    Module,
    ModuleMap,
    dual_module,
    is_flat,
    is_injective,
    is_projective,
)
from .classes import (
    ClassOracle,
    DualityPairSpec,
    builtin_oracles,
    check_class_agreement,
    check_complete_transfer,
    check_duality_transfer,
    check_injective_structure,
    check_perfect_transfer,
    verify_duality_pair,
)
from .enumeration import enumerate_delta_modules, enumerate_modules
from .fixtures import load_fixture, load_workspace
from .functors import (
    coinduce_from_a,
    coinduce_from_b,
    component_a,
    component_b,
    induce_from_a,
    induce_from_b,
)
from .gorenstein import (
    check_ding_transport,
    check_window_transport_backward,
    check_window_transport_forward,
    complete_resolution_window,
    is_ding_projective_window,
    is_gorenstein_projective_window,
)
from .morita import (
    DeltaModule,
    DeltaModuleMap,
    MoritaContext,
    delta_dual,
    is_flat_delta,
    is_injective_delta,
    is_projective_delta,
    pack,
    unpack,
)
from .report import CheckReport, MoritaLabError, Verdict
from .tensor import hom_over_algebra, tensor_over_algebra
from .workspace import Workspace, emit_workspace, parse_workspace

__all__ = [name for name in dir() if not name.startswith("_")]
