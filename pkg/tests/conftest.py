import pytest

from gassmann import fixtures, transplantation_pair


@pytest.fixture(scope="session")
def psl():
    return fixtures.load("psl32")


@pytest.fixture(scope="session")
def affine():
    return fixtures.load("affine8")


@pytest.fixture(scope="session")
def psl_pair(psl):
    G = psl.group
    return transplantation_pair(G, psl.subgroup("point"), psl.subgroup("line"))


@pytest.fixture(scope="session")
def affine_pair(affine):
    G = affine.group
    return transplantation_pair(G, affine.subgroup("units"), affine.subgroup("twisted"))


def pytest_terminal_summary(terminalreporter):
    from _report import PARTS, line
    if PARTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(PARTS):
            terminalreporter.write_line(line(k))
