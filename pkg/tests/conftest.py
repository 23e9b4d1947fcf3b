import pytest

from moritalab.fixtures import load_fixture


@pytest.fixture(scope="session")
def ws_e0():
    return load_fixture("E0")


@pytest.fixture(scope="session")
def ws_e1():
    return load_fixture("E1")


@pytest.fixture(scope="session")
def ws_e2():
    return load_fixture("E2")


@pytest.fixture(scope="session")
def e0(ws_e0):
    return ws_e0.single_context()


@pytest.fixture(scope="session")
def e1(ws_e1):
    return ws_e1.single_context()


@pytest.fixture(scope="session")
def e2(ws_e2):
    return ws_e2.single_context()
