import pytest

from qpfix.fixtures import p3, t3, t3_problem
from qpfix.space import QPSpace

ACCEPTANCE_LINES = []


@pytest.fixture
def P3():
    return p3()


@pytest.fixture
def T3():
    return t3()


@pytest.fixture
def T3_problem():
    return t3_problem()


@pytest.fixture
def asym2():
    """Two points with D(u,v) = 0 and D(v,u) = 1."""
    return QPSpace(("u", "v"), [[0, 0], [1, 0]], 1)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
