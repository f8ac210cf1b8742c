import pytest

from twosep.graph import build

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def k3():
    return build(3, [(1, 2), (2, 3), (1, 3)])


def path3():
    return build(3, [(1, 2), (2, 3)])


def c4():
    return build(4, [(1, 2), (2, 3), (3, 4), (1, 4)])


def k4():
    return build(4, [(a, b) for a in range(1, 5) for b in range(a + 1, 5)])


def bowtie():
    # triangles {1,2,3} and {3,4,5} sharing vertex 3
    return build(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])


def double_edge():
    return build(2, [(1, 2), (1, 2)])


@pytest.fixture
def triangle():
    return k3()
