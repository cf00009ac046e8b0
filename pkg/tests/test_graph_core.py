import networkx as nx
import pytest

from app.analyser.graph_core import (
    build_graph,
    complete_graph,
    cycle_graph,
    cycle_length,
    dimension,
    empty_graph,
    from_networkx,
    graph_union,
    induced_subgraph,
    is_complete,
    is_connected,
    is_isomorphic,
    is_simplex,
    maximal_simplices,
    path_graph,
    relabel,
    simplices,
    to_networkx,
    unit_link,
    wheel_graph,
)
from app.core.errors import PseudomanifoldInputError


def test_build_graph_small_cases():
    k2 = build_graph(["a", "b"], [("a", "b")])
    assert k2.order == 2 and k2.size == 1

    c4 = build_graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    assert c4 == cycle_graph(4)

    k1 = build_graph(["a"], [])
    assert k1.order == 1 and k1.size == 0


def test_build_graph_is_canonical():
    G = build_graph(["b", "a", "c"], [("c", "a"), ("b", "a"), ("a", "b")])
    assert G.vertices == ("a", "b", "c")
    assert G.edges == (("a", "b"), ("a", "c"))


@pytest.mark.parametrize(
    "labels, edges",
    [
        (["a", "b"], [("a", "z")]),
        (["a", "b"], [("a", "a")]),
        (["a", "a"], []),
    ],
)
def test_build_graph_rejects_bad_input(labels, edges):
    with pytest.raises(PseudomanifoldInputError):
        build_graph(labels, edges)


def test_unit_link_examples(k4, c5, octahedron):
    assert is_complete(unit_link(k4, "a"))
    assert unit_link(k4, "a").order == 3

    link = unit_link(c5, "a")
    assert link.vertices == ("b", "e")
    assert link.size == 0

    for v in octahedron.vertices:
        assert cycle_length(unit_link(octahedron, v)) == 4


def test_unit_link_never_contains_vertex(octahedron):
    for v in octahedron.vertices:
        link = unit_link(octahedron, v)
        assert v not in link
        assert link.vertex_set == octahedron.neighbors(v)


def test_unit_link_unknown_vertex(c5):
    with pytest.raises(PseudomanifoldInputError):
        unit_link(c5, "zz")


def test_induced_subgraph(c4, k4, c5):
    assert induced_subgraph(c4, c4.vertices) == c4
    assert is_complete(induced_subgraph(k4, ["a", "b", "c"]))
    assert induced_subgraph(c5, ["a", "b"]).size == 1
    with pytest.raises(PseudomanifoldInputError):
        induced_subgraph(c5, ["a", "q"])


def test_maximal_simplices_examples(c4, k4, octahedron):
    assert [s.dimension for s in maximal_simplices(c4)] == [1, 1, 1, 1]
    assert len(maximal_simplices(k4)) == 1
    facets = maximal_simplices(octahedron)
    assert len(facets) == 8
    assert all(s.dimension == 2 for s in facets)


@pytest.mark.parametrize("seed", range(10))
def test_maximal_simplices_match_networkx(seed):
    G = from_networkx(nx.gnp_random_graph(9, 0.5, seed=seed))
    ours = {frozenset(s.vertices) for s in maximal_simplices(G)}
    theirs = {frozenset(c) for c in nx.find_cliques(to_networkx(G))}
    assert ours == theirs
    for s in maximal_simplices(G):
        assert is_simplex(G, s.vertices)


def test_simplices_counts(k4, octahedron):
    assert len(simplices(k4)) == 15
    assert len(simplices(octahedron, size=1)) == 6
    assert len(simplices(octahedron, size=2)) == 12
    assert len(simplices(octahedron, size=3)) == 8


def test_dimension(k4, c5, octahedron):
    assert dimension(k4) == 3
    assert dimension(c5) == 1
    assert dimension(octahedron) == 2
    assert dimension(empty_graph()) == -1


def test_cycle_length(two_squares):
    assert cycle_length(cycle_graph(7)) == 7
    assert cycle_length(path_graph(3)) is None
    assert cycle_length(two_squares) is None


def test_is_connected(two_squares):
    assert is_connected(cycle_graph(5))
    assert not is_connected(two_squares)
    assert not is_connected(empty_graph())


def test_relabel_must_be_injective(c4):
    renamed = relabel(c4, {"a": "x"})
    assert "x" in renamed and "a" not in renamed
    with pytest.raises(PseudomanifoldInputError):
        relabel(c4, {"a": "b"})


def test_graph_union_shares_labels():
    union = graph_union(path_graph(3), build_graph(["a", "c"], [("a", "c")]))
    assert union == cycle_graph(3)


def test_wheel_hub_link_is_rim():
    assert cycle_length(unit_link(wheel_graph(6), "hub")) == 6


def test_isomorphism_examples(c5):
    shuffled = relabel(c5, {"a": "q", "b": "r", "c": "s", "d": "t", "e": "u"})
    assert is_isomorphic(c5, shuffled)
    assert not is_isomorphic(c5, cycle_graph(6))

    k33 = build_graph(
        ["a", "b", "c", "x", "y", "z"],
        [(u, v) for u in "abc" for v in "xyz"],
    )
    prism = build_graph(
        ["a", "b", "c", "x", "y", "z"],
        [("a", "b"), ("b", "c"), ("c", "a"), ("x", "y"), ("y", "z"), ("z", "x"), ("a", "x"), ("b", "y"), ("c", "z")],
    )
    assert not is_isomorphic(k33, prism)


def test_cube_fixture_shape(cube):
    assert cube.order == 8 and cube.size == 12
    assert not is_isomorphic(cube, complete_graph(8))


@pytest.mark.parametrize("seed", range(20))
def test_isomorphism_agrees_with_networkx(seed):
    G = from_networkx(nx.gnp_random_graph(8, 0.4, seed=seed))
    H = from_networkx(nx.gnp_random_graph(8, 0.4, seed=seed + 100))
    assert is_isomorphic(G, H) == nx.is_isomorphic(to_networkx(G), to_networkx(H))
    assert is_isomorphic(G, G)
    assert is_isomorphic(G, H) == is_isomorphic(H, G)


@pytest.mark.parametrize("seed", range(10))
def test_isomorphism_of_random_relabeling(seed):
    graph = nx.gnp_random_graph(10, 0.5, seed=seed)
    permuted = nx.relabel_nodes(graph, {v: 9 - v for v in graph.nodes})
    assert is_isomorphic(from_networkx(graph), from_networkx(permuted))
