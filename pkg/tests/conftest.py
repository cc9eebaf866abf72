import pytest

from skms.arrangement import build_restricted_arrangement, enumerate_cells
from skms.repspec import validate
from skms.rootdata import gl, torus

D2 = [(-1,), (-1,), (1,), (1,)]
HEX = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)]
GL2_STD = [(1, 0), (0, 1), (-1, 0), (0, -1)]


def d2_rep():
    return validate(torus(1), D2)


def hex_rep():
    return validate(torus(2), HEX)


def gl2_rep():
    return validate(gl(2), GL2_STD * 2)


def build(r, window=None):
    return enumerate_cells(build_restricted_arrangement(r, window))


@pytest.fixture(scope="session")
def d2():
    return build(d2_rep())


@pytest.fixture(scope="session")
def hexagon():
    return build(hex_rep())


@pytest.fixture(scope="session")
def gl2():
    return build(gl2_rep())


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance checks")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, (ok, detail) in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
