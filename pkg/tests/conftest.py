import pytest

from quiverheart.cotorsion import CotorsionPair
from quiverheart.workspace import packaged_fixture

# verdict lines collected by the acceptance tests, replayed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def ws_a2():
    return packaged_fixture("a2")


@pytest.fixture(scope="session")
def ws61():
    return packaged_fixture("ex61")


@pytest.fixture(scope="session")
def ws62():
    return packaged_fixture("ex62")


def _pair(ws, name):
    return CotorsionPair.from_workspace(ws, name)


@pytest.fixture(scope="session")
def pair_a2_1(ws_a2):
    return _pair(ws_a2, "pair1")


@pytest.fixture(scope="session")
def pair_a2_2(ws_a2):
    return _pair(ws_a2, "pair2")


@pytest.fixture(scope="session")
def pair61_1(ws61):
    return _pair(ws61, "pair1")


@pytest.fixture(scope="session")
def pair61_2(ws61):
    return _pair(ws61, "pair2")


@pytest.fixture(scope="session")
def pair61_3(ws61):
    return _pair(ws61, "pair3")


@pytest.fixture(scope="session")
def pair62_1(ws62):
    return _pair(ws62, "pair1")


@pytest.fixture(scope="session")
def pair62_2(ws62):
    return _pair(ws62, "pair2")


@pytest.fixture(scope="session")
def pair62_3(ws62):
    return _pair(ws62, "pair3")
