import sys

import pytest

from gorenstein_quivers.fixtures import load_fixture
from gorenstein_quivers.quiver import bound_quiver


@pytest.fixture(scope="session")
def loop4():
    return load_fixture("cycle_with_loop")


@pytest.fixture(scope="session")
def tails():
    return load_fixture("triangles_with_tails")


@pytest.fixture(scope="session")
def triangles():
    return load_fixture("triangles_with_loop")


@pytest.fixture(scope="session")
def linear():
    return load_fixture("linear_a4")


@pytest.fixture(scope="session")
def tailed():
    return load_fixture("cycle_with_tail")


@pytest.fixture(scope="session")
def a2():
    return bound_quiver(["1", "2"], [("a", "1", "2")], [])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.lines():
        terminalreporter.write_line(line)
