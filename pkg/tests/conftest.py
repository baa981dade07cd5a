import pytest

from regspec.generators import complete, cycle, hypercube, petersen


@pytest.fixture(scope="session")
def pet():
    return petersen()


@pytest.fixture(scope="session")
def k4():
    return complete(4)


@pytest.fixture(scope="session")
def triangle():
    return cycle(3)


@pytest.fixture(scope="session")
def q3():
    return hypercube(3)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
