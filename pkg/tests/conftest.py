import random

import pytest
from hypothesis import HealthCheck, settings

from gmmds.exactla import Mat
from gmmds.gf import GF

settings.register_profile("gmmds", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("gmmds")

P31 = 2**31 - 1
P61 = 2**61 - 1


def rand_mat(F, k, n, rng):
    return Mat(F, [[rng.randrange(F.q) for _ in range(n)] for _ in range(k)], k, n)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def gf4():
    return GF(2, 2)


@pytest.fixture
def gf5():
    return GF(5)


ACCEPTANCE_LINES: list[str] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criteria (slow)")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
