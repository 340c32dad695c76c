import pytest

from expander_cutoff import ConstructionParams, build_cubic, build_five_regular, build_no_cutoff
from expander_cutoff.graphs import GraphBuilder


def graph_from_edges(n, edges):
    b = GraphBuilder()
    b.add_vertices(n)
    for u, v in edges:
        b.add_edge(u, v)
    return b.finish()


def complete_graph(n):
    return graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n):
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph():
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return graph_from_edges(10, edges)


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)


@pytest.fixture(scope="session")
def petersen():
    return petersen_graph()


@pytest.fixture(scope="session")
def five_reg_h1():
    return build_five_regular(ConstructionParams(h=1, L=2))


@pytest.fixture(scope="session")
def five_reg_h2():
    return build_five_regular(ConstructionParams(h=2, L=2))


@pytest.fixture(scope="session")
def cubic_h2():
    return build_cubic(ConstructionParams(h=2, L=2, variant="cubic"))


@pytest.fixture(scope="session")
def no_cutoff_h2():
    return build_no_cutoff(ConstructionParams(h=2, L=2, L_prime=4, variant="no_cutoff"))
