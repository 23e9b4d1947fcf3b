"""Parser and emitter for the line-oriented definition format."""

import pytest

from moritalab.fixtures import SHIPPED, load_fixture
from moritalab.workspace import (
    WorkspaceError,
    emit_workspace,
    parse_workspace,
    workspaces_equal,
)

GOOD = """\
field 2

algebra A2
unit 1 0
mul 1 0 ; 0 1
mul 0 1 ; 0 0

module probe
algebra A2
side left
dim 1
act 1
act 0
"""


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_fixture_round_trips(name):
    ws = load_fixture(name)
    emitted = emit_workspace(ws)
    back = parse_workspace(emitted)
    assert workspaces_equal(ws, back)
    assert emit_workspace(back) == emitted


def test_empty_file_is_an_empty_workspace():
    ws = parse_workspace("")
    assert ws.p is None
    assert not ws.algebras and not ws.modules and not ws.tuples


def test_comments_and_blank_lines_are_ignored():
    ws = parse_workspace("# leading comment\n\n" + GOOD + "\n# trailing\n")
    assert set(ws.algebras) == {"A2"} and set(ws.modules) == {"probe"}
    assert ws.modules["probe"].dim == 1


def test_nonassociative_table_is_a_located_semantic_error():
    text = """\
field 2

algebra bad
unit 1 0 0
mul 1 0 0 ; 0 1 0 ; 0 0 1
mul 0 1 0 ; 0 0 1 ; 0 0 0
mul 0 0 1 ; 0 1 0 ; 0 0 0
"""
    with pytest.raises(WorkspaceError, match=r"line 3: .*associativity fails "
                                             r"at basis triple"):
        parse_workspace(text)


def test_unknown_reference_is_located():
    text = GOOD + "\nmodule orphan\nalgebra missing\nside left\ndim 0\n"
    with pytest.raises(WorkspaceError, match="unknown algebra 'missing'"):
        parse_workspace(text)


def test_duplicate_names_are_rejected():
    text = GOOD + "\nmodule probe\nalgebra A2\nside left\ndim 0\nact zeros 0 0\nact zeros 0 0\n"
    with pytest.raises(WorkspaceError, match="duplicate module name"):
        parse_workspace(text)


def test_entities_require_a_field_declaration():
    with pytest.raises(WorkspaceError, match="declare the field"):
        parse_workspace("algebra A\nunit 1\nmul 1\n")


def test_ragged_matrix_is_rejected():
    text = "field 2\n\nalgebra A\nunit 1\nmul 1 0 ; 1\n"
    with pytest.raises(WorkspaceError, match="ragged"):
        parse_workspace(text)


def test_zero_dimension_needs_the_zeros_form():
    text = "field 2\n\nalgebra A\nunit 1\nmul 1\n\nmodule z\nalgebra A\nside left\ndim 0\nact \n"
    with pytest.raises(WorkspaceError, match="zeros"):
        parse_workspace(text)


def test_builtin_oracle_block():
    text = GOOD + "\noracle flats\ncarrier A2\nside left\nkind flat\n"
    ws = parse_workspace(text)
    oracle = ws.oracles["flats"]
    assert not oracle.contains(ws.modules["probe"])
    assert "flats" in emit_workspace(ws)
    again = parse_workspace(emit_workspace(ws))
    assert workspaces_equal(ws, again)


def test_member_list_oracle_matches_up_to_isomorphism():
    text = GOOD + "\noracle picks\ncarrier A2\nside left\nmember probe\n"
    ws = parse_workspace(text)
    oracle = ws.oracles["picks"]
    assert oracle.contains(ws.modules["probe"])
    import numpy as np
    from moritalab.algebra import LEFT, Module
    other = Module(ws.algebras["A2"], LEFT, 1,
                   np.array([[[1]], [[0]]], dtype=np.int64))
    assert oracle.contains(other)          # isomorphic copy counts
    zero = Module(ws.algebras["A2"], LEFT, 0,
                  np.zeros((2, 0, 0), dtype=np.int64))
    assert not oracle.contains(zero)


def test_oracle_rejects_kind_and_members_together():
    text = GOOD + "\noracle both\ncarrier A2\nside left\nkind flat\nmember probe\n"
    with pytest.raises(WorkspaceError, match="not both"):
        parse_workspace(text)


def test_tuple_block_resolves_and_validates(ws_e2):
    emitted = emit_workspace(ws_e2)
    ws = parse_workspace(emitted)
    v = ws.tuples["Delta"]
    assert v.x is ws.modules["Delta.x"]
    assert v.y is ws.modules["Delta.y"]
    assert v.context is ws.contexts["E2"]
