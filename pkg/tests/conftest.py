import pytest

from wsat import (
    Graph,
    Seed,
    complete,
    complete_bipartite,
    normalize_pattern,
    path,
    sample_gnp,
    star,
)


@pytest.fixture(scope="session")
def k3():
    return normalize_pattern(complete(3))


@pytest.fixture(scope="session")
def k4():
    return normalize_pattern(complete(4))


@pytest.fixture(scope="session")
def k13():
    return normalize_pattern(star(3))


@pytest.fixture(scope="session")
def p3():
    return normalize_pattern(path(3))


@pytest.fixture(scope="session")
def k23():
    return normalize_pattern(complete_bipartite(2, 3))


def random_host(n: int, p: float, seed: int) -> Graph:
    return sample_gnp(n, p, Seed(seed))


def random_spanning_subgraph(g: Graph, keep: float, seed: int) -> Graph:
    rng = Seed(seed).rng()
    return Graph(g.n, (e for e in g.edges() if rng.random() < keep))


# one line per acceptance criterion, echoed after the run (see test_acceptance)
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
