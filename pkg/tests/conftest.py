import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from skdirac.sampling import random_quadruple, random_strong_quadruple

settings.register_profile(
    "default",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=5)
blocks = st.integers(min_value=1, max_value=3)


def strong_from(seed, n, m1, m2, **kwargs):
    return random_strong_quadruple(np.random.default_rng(seed), n, m1, m2, **kwargs)


def admissible_from(seed, n, m1, m2, **kwargs):
    return random_quadruple(np.random.default_rng(seed), n, m1, m2, **kwargs)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# one pass/fail line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
