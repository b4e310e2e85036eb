import os

import pytest
from hypothesis import HealthCheck, settings

from epimc import fixtures
from epimc.generate import default_seed

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def seed():
    return default_seed()


@pytest.fixture
def two_world():
    return fixtures.load("two_world")


@pytest.fixture
def three_world():
    return fixtures.load("three_world")


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
