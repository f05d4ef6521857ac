import pytest

from ordgraph import fixtures


@pytest.fixture(scope="session")
def e1():
    return fixtures.presentation("e1")


@pytest.fixture(scope="session")
def F():
    return fixtures.presentation("f")


@pytest.fixture(scope="session")
def tower():
    return fixtures.presentation("tower")


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
