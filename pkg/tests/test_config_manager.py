import json

import pytest

from modules.config_manager import BUDGET_ENV_VAR, DEFAULT_CONFIG, ConfigManager


@pytest.fixture
def manager(tmp_path, monkeypatch):
    monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
    return ConfigManager(str(tmp_path / "config.json"))


def test_missing_file_is_created_with_defaults(manager, tmp_path):
    written = json.loads((tmp_path / "config.json").read_text(encoding="utf-8"))
    assert written == DEFAULT_CONFIG
    assert manager.get_search_budget() == DEFAULT_CONFIG["search_budget"]
    assert manager.get_tolerance() == pytest.approx(1e-9)
    assert manager.get_suite_settings()["trials"] == 500
    assert manager.get_logging_settings()["level"] == "WARNING"


def test_partial_files_are_filled_from_defaults(tmp_path, monkeypatch):
    monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"search_budget": 50, "theorem_suite": {"trials": 3}}), encoding="utf-8")
    manager = ConfigManager(str(path))
    assert manager.get_search_budget() == 50
    assert manager.get_suite_settings()["trials"] == 3
    assert manager.get_suite_settings()["monoid_trials"] == 200


def test_update_is_saved(manager, tmp_path):
    manager.update_config({"theorem_suite": {"seed": 9}})
    reloaded = ConfigManager(str(tmp_path / "config.json")).get_config()
    assert reloaded["theorem_suite"]["seed"] == 9
    assert reloaded["theorem_suite"]["trials"] == 500


def test_environment_overrides_the_budget(manager, monkeypatch):
    monkeypatch.setenv(BUDGET_ENV_VAR, "1234")
    assert manager.get_search_budget() == 1234


@pytest.mark.parametrize("value", ["lots", "0", "-5"])
def test_invalid_environment_budget_falls_back(manager, monkeypatch, value):
    monkeypatch.setenv(BUDGET_ENV_VAR, value)
    assert manager.get_search_budget() == DEFAULT_CONFIG["search_budget"]


def test_secrets_come_from_the_environment(manager, monkeypatch):
    monkeypatch.setenv("DISENTANGLE_TEST_VALUE", "x")
    assert manager.get_secret("DISENTANGLE_TEST_VALUE") == "x"
    assert manager.get_secret("DISENTANGLE_UNSET_VALUE") is None
