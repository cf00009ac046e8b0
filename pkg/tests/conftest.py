import networkx as nx
import pytest

from app.analyser.arithmetic import cross_polytope, sphere_from_spec, zykov_join
from app.analyser.graph_core import Graph, build_graph, complete_graph, cycle_graph, from_networkx
from app.store.models import SphereSpec


@pytest.fixture
def c4() -> Graph:
    return cycle_graph(4)


@pytest.fixture
def c5() -> Graph:
    return cycle_graph(5)


@pytest.fixture
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture
def octahedron() -> Graph:
    """C4 + S^0, labels c0a..c0d and s0a, s0b."""
    return sphere_from_spec(SphereSpec(cycle_lengths=[4], suspension_count=1))


@pytest.fixture
def sixteen_cell() -> Graph:
    return cross_polytope(3)


@pytest.fixture
def c4_plus_c5() -> Graph:
    return zykov_join(cycle_graph(4), cycle_graph(5))


@pytest.fixture
def cube() -> Graph:
    return from_networkx(nx.hypercube_graph(3))


@pytest.fixture
def two_squares() -> Graph:
    return build_graph(
        ["a", "b", "c", "d", "w", "x", "y", "z"],
        [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("w", "x"), ("x", "y"), ("y", "z"), ("z", "w")],
    )
