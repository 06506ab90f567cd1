import pytest

from klmu.coxeter import a2, b2
from klmu.kl import engine


@pytest.fixture(scope="session")
def W():
    return b2()


@pytest.fixture(scope="session")
def A():
    return a2()


@pytest.fixture(scope="session")
def eng(W):
    return engine(W)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(LINES):
            terminalreporter.write_line(LINES[k])
