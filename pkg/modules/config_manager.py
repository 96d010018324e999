# modules/config_manager.py

import copy
import json
import os
from dotenv import load_dotenv

from modules.logging_manager import get_logger

BUDGET_ENV_VAR = "DISENTANGLE_SEARCH_BUDGET"

DEFAULT_CONFIG = {
    "search_budget": 10 ** 7,
    "tolerance": 1e-9,
    "arithmetic": "exact",
    "decimal_max_denominator": 10 ** 6,
    "magma_max_size": 12,
    "theorem_suite": {
        "seed": 0,
        "max_factor_size": 3,
        "max_factors": 3,
        "trials": 500,
        "monoid_trials": 200,
        "save_log": False,
        "log_dir": "logs"
    },
    "logging": {
        "level": "WARNING",
        "log_to_file": False,
        "log_dir": "logs"
    }
}

_REPO_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


class ConfigManager:
    """
    Manages loading overrides from .env and reading/writing settings to config.json.
    """
    def __init__(self, config_path=None):
        load_dotenv()
        self.config_path = config_path or os.path.join(_REPO_DIR, 'config.json')
        self.config = self._load_config()

    def _load_config(self):
        """Loads the config file from disk, filling missing keys from the defaults."""
        if not os.path.exists(self.config_path):
            default_config = copy.deepcopy(DEFAULT_CONFIG)
            self._save_config(default_config)
            return default_config
        with open(self.config_path, 'r', encoding='utf-8') as f:
            loaded = json.load(f)
        return _merge(copy.deepcopy(DEFAULT_CONFIG), loaded)

    def _save_config(self, data):
        """Saves the config data to the file."""
        try:
            with open(self.config_path, 'w', encoding='utf-8') as f:
                json.dump(data, f, indent=4)
        except OSError as e:
            get_logger().warning(f"ConfigManager: could not write {self.config_path}: {e}")

    def get_secret(self, key_name):
        """Gets a value from environment variables."""
        return os.getenv(key_name)

    def get_config(self):
        """Returns the current configuration, reloading from disk to ensure freshness."""
        self.config = self._load_config()
        return self.config

    def update_config(self, new_data):
        """Updates the config with new data and saves it."""
        self.config = _merge(self.config, new_data)
        self._save_config(self.config)
        get_logger().info("ConfigManager: Configuration updated and saved.")

    def get_search_budget(self):
        """The search budget, with the environment variable taking precedence over config.json."""
        override = self.get_secret(BUDGET_ENV_VAR)
        if override:
            try:
                budget = int(override)
                if budget > 0:
                    return budget
            except ValueError:
                pass
            get_logger().warning(f"ConfigManager: ignoring invalid {BUDGET_ENV_VAR}={override!r}")
        return int(self.config.get("search_budget", DEFAULT_CONFIG["search_budget"]))

    def get_tolerance(self):
        return float(self.config.get("tolerance", DEFAULT_CONFIG["tolerance"]))

    def get_suite_settings(self):
        return dict(self.config.get("theorem_suite", {}))

    def get_logging_settings(self):
        return dict(self.config.get("logging", {}))


def _merge(base, override):
    """Recursively merges `override` into `base` and returns `base`."""
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _merge(base[key], value)
        else:
            base[key] = value
    return base
