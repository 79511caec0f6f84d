import random

import pytest

from oppograph.graphs import Graph, complement, cycle_graph, parse_edge_list
from oppograph.patterns import Pattern, find_induced, make_Hk

CO_C6_EDGE_LIST = "1 3\n3 5\n5 1\n2 4\n4 6\n6 2\n1 4\n3 6\n5 2\n"

# the net graph: triangle 2-3-5 with pendants 1, 4, 6
N_EDGE_LIST = "1 2\n2 3\n3 4\n2 5\n3 5\n5 6\n"


@pytest.fixture
def co_c6_labeled():
    return parse_edge_list(CO_C6_EDGE_LIST)


@pytest.fixture
def co_c6():
    return complement(cycle_graph(6))


@pytest.fixture
def h1():
    return make_Hk(1).as_graph()


@pytest.fixture
def h2():
    return make_Hk(2).as_graph()


def isomorphic(g: Graph, h: Graph) -> bool:
    """Exact isomorphism via induced embedding between equal-size graphs."""
    if g.n != h.n or g.m != h.m:
        return False
    pattern = Pattern("iso-probe", h.n, h.edges)
    return find_induced(g, pattern) is not None


def random_graph(n: int, p: float, seed) -> Graph:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)
