import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rootstab import randgen
from rootstab.grammar import load_fixture

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIXTURES = ("p2_conic_n2", "p2_n1", "quadric_n3")


@pytest.fixture(scope="session")
def conic():
    return load_fixture("p2_conic_n2")


@pytest.fixture(scope="session")
def p2():
    return load_fixture("p2_n1")


@pytest.fixture(scope="session")
def quadric():
    return load_fixture("quadric_n3")


@pytest.fixture(scope="session")
def fixture_configs():
    return [load_fixture(name) for name in FIXTURES]


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def configs(draw, n=None):
    rng = random.Random(draw(seeds))
    return randgen.random_config(rng, n=n)


@st.composite
def config_and_rng(draw):
    rng = random.Random(draw(seeds))
    return randgen.random_config(rng), rng


# acceptance lines collected by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
