import numpy as np
import pytest

from augcontact.harness import build_system
from augcontact.problems import get_problem

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)


@pytest.fixture(scope="session")
def smooth_sys2():
    """Smooth obstacle on level 2 (81 nodes)."""
    p = get_problem("smooth-obstacle")
    return p, build_system(p, p.mesh(2))


@pytest.fixture(scope="session")
def signorini_sys2():
    p = get_problem("signorini")
    return p, build_system(p, p.mesh(2))
