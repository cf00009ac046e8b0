"""
Graph Arithmetic Module.

Operations that preserve pseudomanifolds (Zykov join, suspension,
Cartesian simplex product, Barycentric refinement), the sphere
constructors built from them, and the chromatic predictions for
even-cycle and odd-cycle spheres.
"""

from itertools import chain
import math

from app.analyser.graph_core import (
    ONE_POINT_LABEL,
    Graph,
    build_graph,
    canonical_graph,
    cycle_graph,
    dimension,
    empty_graph,
    one_point_graph,
    relabel,
    simplices,
    two_point_graph,
)
from app.analyser.recognition import pseudomanifold_dimension
from app.core.errors import PseudomanifoldInputError
from app.core.logger_config import get_logger
from app.store.models import ProductClosureReport, SphereSpec, SpherePrediction

logger = get_logger(__name__)


def disjoint_labels(G: Graph, H: Graph) -> tuple[dict[str, str], dict[str, str]]:
    """
    Relabeling maps that make V(G) and V(H) disjoint.

    Identity maps when the label sets are already disjoint; otherwise G's
    labels get the prefix `0.` and H's the prefix `1.`.
    """
    if G.vertex_set.isdisjoint(H.vertex_set):
        return {v: v for v in G.vertices}, {v: v for v in H.vertices}
    return {v: f"0.{v}" for v in G.vertices}, {v: f"1.{v}" for v in H.vertices}


def zykov_join(G: Graph, H: Graph) -> Graph:
    """
    Zykov join G + H: disjoint union plus every cross edge.

    |E| = |E(G)| + |E(H)| + |V(G)| * |V(H)|.
    """
    map_g, map_h = disjoint_labels(G, H)
    left, right = relabel(G, map_g), relabel(H, map_h)
    adjacency = {v: set(nbrs) | set(right.vertices) for v, nbrs in left.adjacency.items()}
    adjacency.update({v: set(nbrs) | set(left.vertices) for v, nbrs in right.adjacency.items()})
    return canonical_graph(chain(left.vertices, right.vertices), adjacency)


def _fresh_pair(G: Graph, stem: str = "s") -> tuple[str, str]:
    north, south = f"{stem}+", f"{stem}-"
    while north in G or south in G:
        north, south = north + "'", south + "'"
    return north, south


def suspension(G: Graph) -> Graph:
    """G + S^0 with two fresh isolated vertices."""
    return zykov_join(G, build_graph(_fresh_pair(G), []))


def sphere_from_spec(spec: SphereSpec) -> Graph:
    """
    Iterated join of the listed cycles, then `suspension_count` copies of S^0.

    Factor labels are prefixed per factor (`c0a`, `c1a`, ..., `s0a`), so no
    namespacing happens inside the joins.

    Raises:
        PseudomanifoldInputError: If some cycle length is below 4.
    """
    short = [n for n in spec.cycle_lengths if n < 4]
    if short:
        raise PseudomanifoldInputError(f"sphere cycles need length >= 4, got {short}")
    result = empty_graph()
    for i, n in enumerate(spec.cycle_lengths):
        result = zykov_join(result, cycle_graph(n, prefix=f"c{i}"))
    for j in range(spec.suspension_count):
        result = zykov_join(result, two_point_graph(prefix=f"s{j}"))
    return result


def cross_polytope(k: int) -> Graph:
    """Join of k + 1 copies of S^0 (2(k + 1) vertices), the minimal k-sphere."""
    if k < 0:
        raise PseudomanifoldInputError(f"cross polytope dimension must be >= 0, got {k}")
    width = len(str(k))
    result = empty_graph()
    for i in range(k + 1):
        result = zykov_join(result, two_point_graph(prefix=f"x{i:0{width}d}"))
    return result


def _containment_graph(nodes: list[tuple[str, tuple[frozenset[str], ...]]]) -> Graph:
    """Comparability graph of tuples of cliques under componentwise containment."""
    adjacency: dict[str, set[str]] = {label: set() for label, _ in nodes}
    for i, (label_a, parts_a) in enumerate(nodes):
        for label_b, parts_b in nodes[i + 1:]:
            below = all(a <= b for a, b in zip(parts_a, parts_b))
            above = all(b <= a for a, b in zip(parts_a, parts_b))
            if below or above:
                adjacency[label_a].add(label_b)
                adjacency[label_b].add(label_a)
    return canonical_graph(adjacency, adjacency)


def cartesian_simplex_product(G: Graph, H: Graph) -> Graph:
    """
    (G x H)_1: vertices are pairs (g, h) of nonempty cliques, labeled "(g|h)";
    distinct pairs are adjacent when one contains the other componentwise.
    """
    if G.order == 0 or H.order == 0:
        raise PseudomanifoldInputError("Cartesian simplex product needs nonempty factors")
    nodes = [
        (f"({g.label}|{h.label})", (frozenset(g.vertices), frozenset(h.vertices)))
        for g in simplices(G)
        for h in simplices(H)
    ]
    return _containment_graph(nodes)


def barycentric_refinement(G: Graph) -> Graph:
    """(G x 1)_1 with the product labels "(g|1)" shortened to the clique label g."""
    if G.order == 0:
        raise PseudomanifoldInputError("Barycentric refinement needs a nonempty graph")
    product = cartesian_simplex_product(G, one_point_graph())
    suffix = f"|{ONE_POINT_LABEL})"
    return relabel(product, {v: v[1:-len(suffix)] for v in product.vertices})


def sphere_chromatic_prediction(spec: SphereSpec) -> SpherePrediction:
    """
    Predicted chromatic number of the sphere a spec builds.

    The printed formula is 2*ceil((k+1)/2) for even-cycle spheres and
    3*ceil((k+1)/2) for odd-cycle ones. The proof-trace value counts colors
    per factor: 2 (even) or 3 (odd) per cycle and 1 per suspension. Mixed
    specs get no prediction.
    """
    k = spec.dimension
    if spec.parity == "mixed":
        return SpherePrediction(
            spec=spec, dimension=k, parity="mixed",
            note="mixed-parity sphere: no prediction",
        )
    per_cycle = 2 if spec.parity == "even" else 3
    printed = per_cycle * math.ceil((k + 1) / 2)
    traced = per_cycle * len(spec.cycle_lengths) + spec.suspension_count
    divergent = printed != traced
    if divergent:
        logger.info("sphere prediction diverges for %s: printed %s, proof trace %s", spec, printed, traced)
    return SpherePrediction(
        spec=spec, dimension=k, parity=spec.parity,
        printed_value=printed, proof_trace_value=traced, divergent=divergent,
        note=f"printed formula {printed} vs proof trace {traced}" if divergent else "",
    )


def product_closure_report(G: Graph, H: Graph) -> ProductClosureReport:
    """
    Measure (G x H)_1 of an m- and an n-pseudomanifold against m+n and m+n+1.

    Raises:
        PseudomanifoldInputError: If either factor is not a pseudomanifold.
    """
    m, n = pseudomanifold_dimension(G), pseudomanifold_dimension(H)
    if m is None or n is None:
        raise PseudomanifoldInputError("both factors must be certified pseudomanifolds")
    product = cartesian_simplex_product(G, H)
    certified = pseudomanifold_dimension(product)
    report = ProductClosureReport(
        left_dimension=m,
        right_dimension=n,
        product_vertices=product.order,
        product_dimension=dimension(product),
        certified_dimension=certified,
        matches_sum=certified == m + n,
        matches_sum_plus_one=certified == m + n + 1,
        discrepancy=certified != m + n + 1,
    )
    if report.discrepancy:
        logger.info("product of dims %s and %s certified at %s, not %s", m, n, certified, m + n + 1)
    return report
