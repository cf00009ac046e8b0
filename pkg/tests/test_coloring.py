import networkx as nx
import pytest

from app.analyser.arithmetic import cross_polytope, sphere_from_spec, suspension, zykov_join
from app.analyser.coloring import (
    chromatic_number_exact,
    dsatur_coloring,
    forest_coloring,
    greedy_coloring,
    join_coloring,
    verify_coloring,
)
from app.analyser.graph_core import (
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    from_networkx,
    two_point_graph,
)
from app.analyser.recognition import is_pseudomanifold
from app.core.errors import PseudomanifoldInputError
from app.store.models import Coloring, SphereSpec


def _brute_force_chromatic(G: Graph) -> int:
    """Smallest k admitting a proper k-coloring, by exhaustive assignment."""
    order = list(G.vertices)
    for k in range(len(order) + 1):
        colors: dict[str, int] = {}

        def assign(i: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            for c in range(k):
                if all(colors.get(u) != c for u in G.adjacency[v]):
                    colors[v] = c
                    if assign(i + 1):
                        return True
                    del colors[v]
            return False

        if assign(0):
            return k
    raise AssertionError("unreachable")


def _spheres(*cycles: int) -> Graph:
    return sphere_from_spec(SphereSpec(cycle_lengths=list(cycles)))


@pytest.mark.parametrize(
    "G, expected",
    [
        (cycle_graph(5), 3),
        (cycle_graph(4), 2),
        (complete_graph(1), 1),
        (complete_graph(6), 6),
        (_spheres(4, 4), 4),
        (_spheres(5, 5), 6),
        (_spheres(4, 5), 5),
        (cross_polytope(3), 4),
    ],
)
def test_exact_values(G, expected):
    result = chromatic_number_exact(G)
    assert result.is_exact
    assert result.value == expected
    assert result.coloring.palette_size == expected
    assert verify_coloring(G, result.coloring)


def test_exact_on_empty_graph():
    result = chromatic_number_exact(empty_graph())
    assert result.value == 0
    assert result.coloring.assignment == {}


@pytest.mark.slow
def test_three_pentagons_need_nine_colors():
    G = _spheres(5, 5, 5)
    result = chromatic_number_exact(G, budget=60)
    assert result.value == 9
    assert verify_coloring(G, result.coloring)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_even_cycle_spheres(m):
    assert chromatic_number_exact(_spheres(*[4] * m)).value == 2 * m


def test_exact_timeout_returns_interval():
    G = from_networkx(nx.mycielski_graph(5))
    result = chromatic_number_exact(G, budget=0.0)
    assert result.timed_out
    assert not result.is_exact
    assert result.value is None
    assert result.lower == 2
    assert result.upper >= 5
    assert verify_coloring(G, result.coloring)


@pytest.mark.parametrize("seed", range(8))
def test_parallel_search_matches_sequential(seed):
    G = from_networkx(nx.gnp_random_graph(12, 0.5, seed=seed))
    sequential = chromatic_number_exact(G)
    parallel = chromatic_number_exact(G, jobs=4)
    assert parallel.value == sequential.value
    assert parallel.coloring == sequential.coloring
    loose = chromatic_number_exact(G, jobs=4, deterministic=False)
    assert loose.value == sequential.value
    assert verify_coloring(G, loose.coloring)


def test_dsatur_is_proper_and_bounded(c5, octahedron):
    for G in (c5, octahedron, _spheres(5, 5)):
        coloring = dsatur_coloring(G)
        assert verify_coloring(G, coloring)
        assert coloring.palette_size >= chromatic_number_exact(G).value


def test_greedy_examples(c4, c5, k4):
    assert greedy_coloring(c4, list(c4.vertices)).palette_size == 2
    assert greedy_coloring(c5, list(c5.vertices)).palette_size == 3
    assert greedy_coloring(k4, ["d", "b", "a", "c"]).palette_size == 4


@pytest.mark.parametrize("order", [["a", "b", "c"], ["a", "b", "c", "d", "d"], ["a", "b", "c", "z"]])
def test_greedy_rejects_bad_permutation(c4, order):
    with pytest.raises(PseudomanifoldInputError):
        greedy_coloring(c4, order)


def test_verify_coloring_examples(c4):
    assert verify_coloring(c4, Coloring(palette_size=2, assignment={"a": 0, "b": 1, "c": 0, "d": 1}))
    assert not verify_coloring(c4, Coloring(palette_size=1, assignment={"a": 0, "b": 0, "c": 0, "d": 0}))
    assert not verify_coloring(c4, Coloring(palette_size=2, assignment={"a": 0, "b": 1, "c": 0}))
    assert not verify_coloring(c4, Coloring(palette_size=1, assignment={"a": 0, "b": 1, "c": 0, "d": 1}))
    assert verify_coloring(complete_graph(3), Coloring(palette_size=3, assignment={"a": 0, "b": 1, "c": 2}))


def test_join_coloring_of_two_pentagons(c5):
    best = chromatic_number_exact(c5).coloring
    joined = join_coloring(c5, best, c5, best)
    assert joined.palette_size == 6
    assert verify_coloring(zykov_join(c5, c5), joined)


def test_join_coloring_of_square_and_two_points(c4, octahedron):
    square = Coloring(palette_size=2, assignment={"a": 0, "b": 1, "c": 0, "d": 1})
    points = Coloring(palette_size=1, assignment={"a": 0, "b": 0})
    joined = join_coloring(c4, square, two_point_graph(), points)
    assert joined.palette_size == 3
    assert verify_coloring(zykov_join(c4, two_point_graph()), joined)


def test_join_coloring_with_empty_factor(c5):
    best = chromatic_number_exact(c5).coloring
    joined = join_coloring(empty_graph(), Coloring(palette_size=0, assignment={}), c5, best)
    assert joined == best


def test_join_coloring_rejects_improper_input(c4):
    bad = Coloring(palette_size=1, assignment={v: 0 for v in c4.vertices})
    good = Coloring(palette_size=2, assignment={"a": 0, "b": 1, "c": 0, "d": 1})
    with pytest.raises(PseudomanifoldInputError):
        join_coloring(c4, bad, c4, good)


@pytest.mark.parametrize(
    "K, d",
    [
        (sphere_from_spec(SphereSpec(cycle_lengths=[4], suspension_count=1)), 2),
        (cycle_graph(7), 1),
        (cross_polytope(3), 3),
        (_spheres(5, 5), 3),
        (_spheres(4, 5), 3),
    ],
)
def test_forest_coloring_is_proper_within_sandwich(K, d):
    coloring = forest_coloring(K, is_pseudomanifold(K, d))
    assert verify_coloring(K, coloring)
    assert coloring.palette_size <= 2 * d + 2
    assert coloring.palette_size == coloring.colors_used


@pytest.mark.parametrize(
    "K, d",
    [
        (cycle_graph(6), 1),
        (sphere_from_spec(SphereSpec(cycle_lengths=[4], suspension_count=1)), 2),
        (cross_polytope(2), 2),
        (cross_polytope(3), 3),
        (_spheres(4, 4), 3),
    ],
)
def test_forest_coloring_of_balanced_spheres_is_optimal(K, d):
    coloring = forest_coloring(K, is_pseudomanifold(K, d))
    assert verify_coloring(K, coloring)
    assert coloring.palette_size == d + 1


def test_forest_coloring_needs_accepted_certificate(k4, octahedron):
    with pytest.raises(PseudomanifoldInputError):
        forest_coloring(k4, is_pseudomanifold(k4, 3))
    with pytest.raises(PseudomanifoldInputError):
        forest_coloring(octahedron, is_pseudomanifold(cycle_graph(4), 1))


@pytest.mark.slow
def test_exact_matches_brute_force_on_small_connected_graphs():
    checked = 0
    for graph in nx.graph_atlas_g():
        if graph.number_of_nodes() == 0 or not nx.is_connected(graph):
            continue
        G = from_networkx(graph)
        assert chromatic_number_exact(G).value == _brute_force_chromatic(G)
        checked += 1
    assert checked > 800


def _random_pairs(count: int):
    for seed in range(count):
        n, m = 1 + seed % 7, 1 + (seed * 3) % 7
        left = from_networkx(nx.gnp_random_graph(n, 0.5, seed=seed))
        right = from_networkx(nx.gnp_random_graph(m, 0.5, seed=seed + 1000))
        yield left, right


@pytest.mark.slow
def test_join_adds_chromatic_numbers():
    for G, H in _random_pairs(200):
        joined = chromatic_number_exact(zykov_join(G, H)).value
        assert joined == chromatic_number_exact(G).value + chromatic_number_exact(H).value


@pytest.mark.parametrize("seed", range(15))
def test_suspension_adds_one(seed):
    G = from_networkx(nx.gnp_random_graph(1 + seed % 7, 0.5, seed=seed))
    assert chromatic_number_exact(suspension(G)).value == chromatic_number_exact(G).value + 1


@pytest.mark.parametrize("seed", range(15))
def test_join_adds_on_a_sample(seed):
    G = from_networkx(nx.gnp_random_graph(5, 0.5, seed=seed))
    H = from_networkx(nx.gnp_random_graph(4, 0.6, seed=seed + 50))
    assert chromatic_number_exact(zykov_join(G, H)).value == (
        chromatic_number_exact(G).value + chromatic_number_exact(H).value
    )


@pytest.mark.slow
def test_suspension_adds_one_on_join_corpus():
    for G, H in _random_pairs(200):
        for factor in (G, H):
            assert chromatic_number_exact(suspension(factor)).value == chromatic_number_exact(factor).value + 1
