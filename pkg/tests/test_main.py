import json

import pytest

import main
from commands import EXIT_FAILED, EXIT_INPUT_ERROR, EXIT_OK
from commands.check import CheckCommand
from instances.instance_loader import instance_to_data
from modules.config_manager import ConfigManager
from modules.gallery import rotation_instance

SMALL_SUITE = {
    "seed": 3,
    "max_factor_size": 2,
    "max_factors": 2,
    "trials": 4,
    "monoid_trials": 2,
    "save_log": False,
}


def write_rotation(tmp_path, expected):
    data = instance_to_data(rotation_instance().instance)
    data.pop("expected", None)
    if expected is not None:
        data["expected"] = expected
    path = tmp_path / "rotation.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


@pytest.mark.parametrize("name", ["rotation_set.json", "pictured_rel.json", "noisy_bits_stoch.json",
                                  "flips_action.json", "scene_count.json"])
def test_check_examples(example_path, capsys, name):
    assert main.run(["check", example_path(name)]) == EXIT_OK
    assert "MISMATCH" not in capsys.readouterr().out


def test_check_json_report(example_path, capsys):
    assert main.run(["check", example_path("rotation_set.json"), "--report", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["instance"] == "Rotation"
    assert data["mismatches"] == []
    assert data["verdicts"]["D1.c"] == "holds"


def test_check_selected_definitions(example_path, capsys):
    code = main.run(["check", example_path("rotation_set.json"), "--definitions", "D1.c,D1.e(1,2)"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "D1.e(1,2)" in out and "D1.a" not in out


def test_expected_mismatch_fails(tmp_path, capsys):
    path = write_rotation(tmp_path, {"D1.a": "holds"})
    assert main.run(["check", path]) == EXIT_FAILED
    assert "MISMATCH D1.a: expected holds, got fails" in capsys.readouterr().out


def test_failing_definition_without_expectations(tmp_path, capsys):
    path = write_rotation(tmp_path, None)
    assert main.run(["check", path, "--definitions", "D1.c"]) == EXIT_OK
    assert main.run(["check", path, "--definitions", "D1.a"]) == EXIT_FAILED


def test_check_with_a_loose_tolerance(tmp_path, capsys):
    data = {
        "format_version": 1,
        "category": "stoch",
        "name": "Blurred",
        "sets": {"B": ["0", "1"], "Y": {"factors": ["B"]}, "Z": {"factors": ["B"]}},
        "X": "B",
        "morphisms": {
            "g": {"rows": [["1", "0"], ["0", "1"]]},
            "f": {"rows": [["0.89", "0.11"], ["0.11", "0.89"]]},
        },
    }
    path = tmp_path / "blurred.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    args = ["check", str(path), "--tolerance", "0.1", "--definitions", "D5.b", "--report", "json"]
    assert main.run(args) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["flags"] == {"deterministic": False}


def test_input_errors(tmp_path, example_path, capsys):
    assert main.run(["check", str(tmp_path / "nowhere.json")]) == EXIT_INPUT_ERROR
    assert main.run(["check", example_path("rotation_set.json"), "--definitions", "D9"]) == EXIT_INPUT_ERROR
    assert main.run(["frobnicate"]) == EXIT_INPUT_ERROR
    assert "Unknown definition 'D9'" in capsys.readouterr().err


def test_definition_list_keeps_pair_arguments_whole():
    assert CheckCommand._split_definitions("D1.a, D1.e(1,2),D1.c'") == ["D1.a", "D1.e(1,2)", "D1.c'"]


def test_gallery_command(capsys):
    assert main.run(["gallery"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Rotation [set]" in out and "MISMATCH" not in out


def test_decompose_command(example_path, capsys):
    assert main.run(["decompose", example_path("klein_magma.json")]) == EXIT_OK
    assert "8 decomposition(s) of a magma with 4 elements:" in capsys.readouterr().out
    assert main.run(["decompose", example_path("klein_magma.json"), "--max-size", "3"]) == EXIT_INPUT_ERROR
    assert main.run(["decompose", example_path("rotation_set.json")]) == EXIT_INPUT_ERROR


def test_theorems_command(monkeypatch, capsys):
    monkeypatch.setattr(ConfigManager, "get_suite_settings", lambda self: dict(SMALL_SUITE))
    assert main.run(["theorems", "--report", "json"]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["failed"] == 0
    assert summary["settings"]["seed"] == 3
    assert main.run(["theorems", "--seed", "5", "--trials", "2"]) == EXIT_OK
    assert "Total:" in capsys.readouterr().out
