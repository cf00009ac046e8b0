"""
Duality Module.

The two dualities on pseudomanifolds and what is built on them:
- complementary dual: intersection of the unit links of a vertex set
- facet dual graph: maximal simplices, adjacent when sharing a codimension-one face
- forest peeling of the dual graph
- dual links of (d-2)-simplices and the Fisk variety (their odd part)
"""

from dataclasses import dataclass
from enum import Enum
from functools import reduce
from itertools import combinations
from typing import Literal

from app.analyser.arithmetic import disjoint_labels, zykov_join
from app.analyser.graph_core import (
    Graph,
    Simplex,
    build_graph,
    cycle_length,
    empty_graph,
    graph_union,
    induced_subgraph,
    is_complete,
    is_simplex,
    maximal_simplices,
    relabel,
    simplices,
)
from app.analyser.recognition import is_subpseudomanifold, pseudomanifold_dimension
from app.core.errors import PseudomanifoldInputError
from app.core.logger_config import get_logger

logger = get_logger(__name__)


# ============================================================
# Complementary dual
# ============================================================

def complementary_dual(G: Graph, H_vertices) -> Graph:
    """
    Induced subgraph on the common neighbors of every vertex in H.

    The empty set gives G itself; a single vertex gives its unit link.
    """
    H = sorted(set(H_vertices))
    if not H:
        return G
    unknown = [v for v in H if v not in G]
    if unknown:
        raise PseudomanifoldInputError(f"unknown vertices: {unknown}")
    common = reduce(lambda acc, y: acc & G.neighbors(y), H[1:], G.neighbors(H[0]))
    return induced_subgraph(G, common)


class DualClass(str, Enum):
    EMPTY = "empty"
    WHOLE = "whole"
    COMPLETE = "complete"
    PYRAMID = "pyramid"
    SUBPSEUDOMANIFOLD = "subpseudomanifold"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class DualClassification:
    kind: DualClass
    subgraph: Graph
    dimension: int | None = None
    apex: str | None = None


def classify_complementary_dual(K: Graph, H_vertices) -> DualClassification:
    """
    Classify the complementary dual of H in a certified pseudomanifold K.

    Cases are tried in the order empty, whole, complete, pyramid,
    subpseudomanifold; the first that verifies wins. A pyramid is an apex
    adjacent to everything else over a subpseudomanifold base.

    Raises:
        PseudomanifoldInputError: If K is not a certified pseudomanifold.
    """
    if pseudomanifold_dimension(K) is None:
        raise PseudomanifoldInputError("classification needs a certified pseudomanifold")
    D = complementary_dual(K, H_vertices)
    if D.order == 0:
        return DualClassification(DualClass.EMPTY, D)
    if D == K:
        return DualClassification(DualClass.WHOLE, D, dimension=pseudomanifold_dimension(K))
    if is_complete(D):
        return DualClassification(DualClass.COMPLETE, D, dimension=D.order - 1)
    for apex in D.vertices:
        if len(D.adjacency[apex]) != D.order - 1:
            continue
        base = induced_subgraph(D, D.adjacency[apex])
        if is_subpseudomanifold(base, K):
            return DualClassification(DualClass.PYRAMID, D, dimension=pseudomanifold_dimension(base) + 1, apex=apex)
    if is_subpseudomanifold(D, K):
        return DualClassification(DualClass.SUBPSEUDOMANIFOLD, D, dimension=pseudomanifold_dimension(D))
    logger.info("complementary dual of %s left unclassified", sorted(set(H_vertices)))
    return DualClassification(DualClass.UNCLASSIFIED, D)


# ============================================================
# Facet dual graph
# ============================================================

@dataclass(frozen=True, order=True)
class DualEdge:
    """Two facets (by index) and the (d-1)-face they share."""

    source: int
    target: int
    face: Simplex


@dataclass(frozen=True)
class DualGraph:
    facets: tuple[Simplex, ...]
    adjacency: tuple[DualEdge, ...]
    source_dimension: int

    def neighbors(self, i: int) -> list[int]:
        out = [e.target for e in self.adjacency if e.source == i]
        out += [e.source for e in self.adjacency if e.target == i]
        return sorted(out)

    def degrees(self) -> list[int]:
        counts = [0] * len(self.facets)
        for e in self.adjacency:
            counts[e.source] += 1
            counts[e.target] += 1
        return counts

    def is_regular(self, degree: int) -> bool:
        return all(c == degree for c in self.degrees())

    def face_multiplicity(self) -> dict[Simplex, int]:
        """How many facets contain each (d-1)-face."""
        counts: dict[Simplex, int] = {}
        for facet in self.facets:
            for face in combinations(facet.vertices, len(facet) - 1):
                counts[Simplex(face)] = counts.get(Simplex(face), 0) + 1
        return counts

    def is_triangle_free(self) -> bool:
        nbrs = [set(self.neighbors(i)) for i in range(len(self.facets))]
        return all(not (nbrs[e.source] & nbrs[e.target]) for e in self.adjacency)

    def to_graph(self) -> Graph:
        """Graph whose vertex labels are the canonical facet strings."""
        labels = [f.label for f in self.facets]
        return build_graph(labels, [(labels[e.source], labels[e.target]) for e in self.adjacency])


def dual_graph(K: Graph) -> DualGraph:
    """
    Facet dual graph of a pure graph K.

    Raises:
        PseudomanifoldInputError: If the maximal simplices differ in size.
    """
    facets = maximal_simplices(K)
    if not facets:
        return DualGraph(facets=(), adjacency=(), source_dimension=-1)
    sizes = {len(f) for f in facets}
    if len(sizes) > 1:
        small = min(facets, key=len)
        large = max(facets, key=len)
        raise PseudomanifoldInputError(
            f"dual graph needs a pure graph: facets {small.label} and {large.label} differ in size"
        )
    d = facets[0].dimension

    by_face: dict[tuple[str, ...], list[int]] = {}
    for i, facet in enumerate(facets):
        for face in combinations(facet.vertices, d):
            by_face.setdefault(face, []).append(i)

    edges = sorted(
        DualEdge(i, j, Simplex(face))
        for face, members in by_face.items()
        for i, j in combinations(members, 2)
    )
    return DualGraph(facets=tuple(facets), adjacency=tuple(edges), source_dimension=d)


# ============================================================
# Forest peeling
# ============================================================

@dataclass(frozen=True)
class ForestPeel:
    """Disjoint acyclic edge sets (facet index pairs) covering the dual graph."""

    forests: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def sizes(self) -> list[int]:
        return [len(f) for f in self.forests]

    def covers(self, D: DualGraph) -> bool:
        peeled = [e for forest in self.forests for e in forest]
        return len(peeled) == len(set(peeled)) and set(peeled) == {(e.source, e.target) for e in D.adjacency}


def _spanning_forest(nbrs: dict[int, list[int]], strategy: Literal["bfs", "dfs"]) -> list[tuple[int, int]]:
    """
    Spanning forest grown from each smallest unvisited index.

    bfs goes level by level: every newly reached node hangs off the
    previous-level neighbor with the fewest children so far (smallest
    index on ties). dfs follows the first unvisited neighbor.
    """
    visited: set[int] = set()
    tree: list[tuple[int, int]] = []
    for root in sorted(nbrs):
        if root in visited:
            continue
        visited.add(root)
        if strategy == "bfs":
            level = [root]
            while level:
                reached = sorted({w for u in level for w in nbrs[u] if w not in visited})
                children = dict.fromkeys(level, 0)
                for w in reached:
                    parent = min((u for u in level if w in nbrs[u]), key=lambda u: (children[u], u))
                    children[parent] += 1
                    tree.append((min(parent, w), max(parent, w)))
                visited.update(reached)
                level = reached
        else:
            stack = [(root, iter(nbrs[root]))]
            while stack:
                u, pending = stack[-1]
                for w in pending:
                    if w not in visited:
                        visited.add(w)
                        tree.append((min(u, w), max(u, w)))
                        stack.append((w, iter(nbrs[w])))
                        break
                else:
                    stack.pop()
    return sorted(tree)


def forest_peel(D: DualGraph, strategy: Literal["bfs", "dfs"] = "bfs") -> ForestPeel:
    """
    Repeatedly extract a spanning forest of the remaining dual edges.

    Each forest is grown from the smallest remaining facet index, visiting
    neighbors in ascending order. Always returns at least one forest.
    """
    remaining = {(e.source, e.target) for e in D.adjacency}
    forests: list[tuple[tuple[int, int], ...]] = []
    while remaining:
        nbrs: dict[int, list[int]] = {}
        for u, w in remaining:
            nbrs.setdefault(u, []).append(w)
            nbrs.setdefault(w, []).append(u)
        for lst in nbrs.values():
            lst.sort()
        forest = _spanning_forest(nbrs, strategy)
        forests.append(tuple(forest))
        remaining -= set(forest)
    return ForestPeel(forests=tuple(forests) or ((),))


# ============================================================
# Dual links and the Fisk variety
# ============================================================

def dual_link(K: Graph, x: Simplex, dimension: int | None = None) -> Graph:
    """
    Intersection of the unit links of the vertices of a (d-2)-simplex x.

    Args:
        K: Certified d-pseudomanifold, d >= 2.
        x: The (d-2)-simplex.
        dimension: d when the caller already knows it.
    """
    d = pseudomanifold_dimension(K) if dimension is None else dimension
    if d is None or d < 2:
        raise PseudomanifoldInputError("dual links need a certified pseudomanifold of dimension >= 2")
    if x.dimension != d - 2:
        raise PseudomanifoldInputError(f"dual link needs a {d - 2}-simplex, got dimension {x.dimension}")
    if not is_simplex(K, x.vertices):
        raise PseudomanifoldInputError(f"{x.label} is not a simplex of the graph")
    return complementary_dual(K, x.vertices)


@dataclass(frozen=True)
class FiskVariety:
    dimension: int
    odd_simplices: tuple[Simplex, ...]
    dual_link_lengths: tuple[tuple[Simplex, int], ...]
    subgraph: Graph


def fisk_variety(K: Graph) -> FiskVariety:
    """
    The (d-2)-simplices with odd dual link and the subgraph their vertices generate.

    For d = 1 the cycle itself is the dual link: O(C_n) is C_n for odd n,
    empty for even n.
    """
    d = pseudomanifold_dimension(K)
    if d is None:
        raise PseudomanifoldInputError("Fisk variety needs a certified pseudomanifold")
    if d < 1:
        raise PseudomanifoldInputError(f"Fisk variety needs dimension >= 1, got {d}")
    if d == 1:
        n = cycle_length(K)
        return FiskVariety(d, (), (), K if n % 2 else empty_graph())

    lengths: list[tuple[Simplex, int]] = []
    for x in simplices(K, size=d - 1):
        n = cycle_length(dual_link(K, x, dimension=d))
        if n is None or n < 4:
            raise RuntimeError(f"dual link of {x.label} is not a cycle of length >= 4")
        lengths.append((x, n))
    odd = tuple(x for x, n in lengths if n % 2)
    generated = induced_subgraph(K, {v for x in odd for v in x.vertices})
    return FiskVariety(d, odd, tuple(lengths), generated)


@dataclass(frozen=True)
class FiskJoinCheck:
    left: Graph
    right: Graph

    @property
    def agree(self) -> bool:
        return self.left == self.right


def fisk_join_check(K: Graph, K_prime: Graph) -> FiskJoinCheck:
    """
    Both sides of O(K + K') = K + O(K') u O(K) + K', read as generated subgraphs.

    The two operands are made label-disjoint first, so all joins share labels.
    """
    map_k, map_kp = disjoint_labels(K, K_prime)
    A, B = relabel(K, map_k), relabel(K_prime, map_kp)
    left = fisk_variety(zykov_join(A, B)).subgraph
    right = graph_union(zykov_join(A, fisk_variety(B).subgraph), zykov_join(fisk_variety(A).subgraph, B))
    check = FiskJoinCheck(left=left, right=right)
    if not check.agree:
        logger.info("join formula sides differ: %s vs %s vertices", left.order, right.order)
    return check
