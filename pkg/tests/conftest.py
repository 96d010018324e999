import os

import pytest
from hypothesis import HealthCheck, settings

from modules.logging_manager import configure_logging

settings.register_profile(
    "disentangle",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("disentangle")

EXAMPLES_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "instances", "examples")


@pytest.fixture(autouse=True)
def quiet_logging():
    configure_logging("ERROR")


@pytest.fixture
def example_path():
    def resolve(name):
        return os.path.join(EXAMPLES_DIR, name)
    return resolve
