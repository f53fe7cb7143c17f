import pytest

from nbspectra.graphs import (
    RegularGraph,
    sample_regular_graph,
    sample_regular_hypergraph,
)


def named_graph(name: str) -> RegularGraph:
    """Hand-built fixture graphs; all validated."""
    if name == "C3":
        g = RegularGraph(3, 2, ((0, 1), (0, 2), (1, 2)))
    elif name == "C4":
        g = RegularGraph(4, 2, ((0, 1), (0, 3), (1, 2), (2, 3)))
    elif name == "K4":
        g = RegularGraph(4, 3, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))
    elif name == "K33":
        edges = tuple(sorted((u, v) for u in (0, 1, 2) for v in (3, 4, 5)))
        g = RegularGraph(6, 3, edges)
    elif name == "prism":
        g = RegularGraph(
            6, 3, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5))
        )
    elif name == "cube":
        edges = sorted(
            (u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < (u ^ (1 << b))
        )
        g = RegularGraph(8, 3, tuple(edges))
    elif name == "petersen":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        edges = tuple(sorted(tuple(sorted(e)) for e in outer + inner + spokes))
        g = RegularGraph(10, 3, edges)
    else:
        raise KeyError(name)
    g.validate()
    return g


#: graphs with nd <= 24: small enough for the characteristic-polynomial oracle
ORACLE_CORPUS = ["C3", "C4", "K4", "K33", "prism", "cube"]
#: graphs with nd <= 60 for the determinant-identity corpus
IHARA_CORPUS = ORACLE_CORPUS + ["petersen"]


@pytest.fixture(params=ORACLE_CORPUS)
def small_graph(request):
    return named_graph(request.param)


@pytest.fixture
def k4():
    return named_graph("K4")


@pytest.fixture
def c3():
    return named_graph("C3")


@pytest.fixture(scope="session")
def hyper923():
    return sample_regular_hypergraph(9, 2, 3, 42)


@pytest.fixture(scope="session")
def sampled_graphs():
    """A few sampled instances shared across tests."""
    return {
        (8, 3): sample_regular_graph(8, 3, 5),
        (20, 4): sample_regular_graph(20, 4, 11),
        (30, 3): sample_regular_graph(30, 3, 2),
    }
