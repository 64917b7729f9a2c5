import pytest

from obslab.graph import complete, complete_bipartite
from obslab.realisability import obstruction_model


@pytest.fixture(scope="session")
def k4():
    return complete(4)


@pytest.fixture(scope="session")
def k5():
    return complete(5)


@pytest.fixture(scope="session")
def k6():
    return complete(6)


@pytest.fixture(scope="session")
def k23():
    return complete_bipartite(2, 3)


@pytest.fixture(scope="session")
def k33():
    return complete_bipartite(3, 3)


@pytest.fixture(scope="session")
def models(k4, k5, k6, k23, k33):
    return {name: obstruction_model(g) for name, g in
            [("K4", k4), ("K5", k5), ("K6", k6), ("K2,3", k23), ("K3,3", k33)]}


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
