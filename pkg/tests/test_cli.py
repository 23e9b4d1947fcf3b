"""Exit-code contract for the command line front end."""

import json

import pytest

from moritalab.cli import run

PASS, REFUTED, CONSISTENT, HYPOTHESIS_FAILURE, INPUT_ERROR = 0, 1, 2, 3, 4


def test_validate_fixture():
    assert run(["validate", "--fixture", "E1"]) == PASS


def test_duality_transfer_passes():
    assert run(["theorem", "3.3", "--fixture", "E1", "--bound", "1"]) == PASS


def test_window_transport_is_consistent_not_proved():
    code = run(["theorem", "4.3", "--fixture", "E2", "--window", "4"])
    assert code == CONSISTENT


def test_injective_structure_passes():
    assert run(["theorem", "4.7", "--fixture", "E1", "--bound", "2"]) == PASS


def test_classify_regular_tuple_projective():
    assert run(["classify", "proj", "Delta", "--fixture", "E2"]) == PASS


def test_classify_non_member_is_a_refutation():
    assert run(["classify", "proj", "probe.a", "--fixture", "E2"]) == REFUTED


def test_unknown_fixture_is_an_input_error(tmp_path):
    assert run(["validate", "--fixture", "nowhere"]) == INPUT_ERROR
    missing = tmp_path / "gone.txt"
    assert run(["validate", "--fixture", str(missing)]) == INPUT_ERROR


def test_functor_rejects_module_over_the_wrong_corner():
    assert run(["functor", "t_A", "probe.b", "--fixture", "E2"]) == INPUT_ERROR


def test_functor_applies_on_the_right_corner():
    assert run(["functor", "t_A", "probe.a", "--fixture", "E2"]) == PASS
    assert run(["functor", "h_B", "probe.b", "--fixture", "E2"]) == PASS


def test_bad_usage_is_an_input_error(capsys):
    assert run(["theorem", "9.9", "--fixture", "E1"]) == INPUT_ERROR
    assert run(["no-such-command"]) == INPUT_ERROR
    capsys.readouterr()


def test_unpack_round_trip_command():
    assert run(["unpack", "Delta", "--fixture", "E0"]) == PASS
    assert run(["pack", "Delta", "--fixture", "E2"]) == PASS


def test_dual_and_tensor_commands():
    assert run(["dual", "probe.a", "--fixture", "E2"]) == PASS
    assert run(["tensor", "M", "probe.a", "--fixture", "E2"]) == PASS


def test_enumerate_command():
    assert run(["enumerate", "--max-dim", "1", "--fixture", "E2"]) == PASS


def test_duality_pair_command():
    code = run(["duality-pair", "--left", "flat", "--right", "injective",
                "--bound", "1", "--fixture", "E1"])
    assert code == PASS


def test_class_member_command():
    assert run(["class-member", "B", "Delta", "--fixture", "E2"]) == PASS


def test_report_json_is_written(tmp_path):
    out = tmp_path / "report.json"
    code = run(["theorem", "3.3", "--fixture", "E2", "--bound", "1",
                "--report", str(out)])
    assert code == PASS
    payload = json.loads(out.read_text())
    assert payload["command"] == "theorem"
    assert payload["exit-code"] == 0
    assert payload["verdict"] == "pass"
    assert payload["report"]["name"]


def test_report_json_on_refutation(tmp_path):
    out = tmp_path / "r.json"
    code = run(["classify", "inj", "probe.a", "--fixture", "E2",
                "--report", str(out)])
    payload = json.loads(out.read_text())
    assert code == REFUTED and payload["exit-code"] == 1
