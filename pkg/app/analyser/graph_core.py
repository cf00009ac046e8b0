"""
Graph Core Module.

Immutable simple-graph foundation shared by every other analyser module:
construction, induced subgraphs, unit links, clique machinery, dimension,
cycle recognition and small-graph isomorphism.

Design principles:
- Vertex labels are opaque strings, kept in lexicographic order
- Graph and Simplex never change after construction
- All functions are pure; invalid input raises PseudomanifoldInputError
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
import string

import networkx as nx

from app.core.errors import PseudomanifoldInputError
from app.core.logger_config import get_logger

logger = get_logger(__name__)

ONE_POINT_LABEL = "1"


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph in canonical form."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        table: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            table[u].add(v)
            table[v].add(u)
        return {v: frozenset(nbrs) for v, nbrs in table.items()}

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    def neighbors(self, v: str) -> frozenset[str]:
        if v not in self.vertex_set:
            raise PseudomanifoldInputError(f"unknown vertex {v!r}")
        return self.adjacency[v]

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.adjacency.get(u, ())

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def __contains__(self, v: object) -> bool:
        return v in self.vertex_set

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True, order=True)
class Simplex:
    """A complete subgraph given as a sorted, duplicate-free vertex tuple."""

    vertices: tuple[str, ...]

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    @property
    def label(self) -> str:
        return "-".join(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def canonical_graph(vertices: Iterable[str], adjacency: Mapping[str, Iterable[str]]) -> Graph:
    """Build a Graph from already-validated data without re-checking labels."""
    ordered = tuple(sorted(set(vertices)))
    edges = sorted({
        (u, v) if u < v else (v, u)
        for u in ordered
        for v in adjacency.get(u, ())
        if u != v
    })
    return Graph(vertices=ordered, edges=tuple(edges))


def build_graph(vertex_labels: Iterable[str], edge_pairs: Iterable[tuple[str, str]]) -> Graph:
    """
    Build a canonical Graph from labels and edge pairs.

    Args:
        vertex_labels: Distinct vertex labels.
        edge_pairs: Pairs of declared labels; duplicates are collapsed.

    Returns:
        Graph with sorted vertices and sorted edges.

    Raises:
        PseudomanifoldInputError: On duplicate labels, unknown labels or self-loops.
    """
    labels = [str(v) for v in vertex_labels]
    declared = set(labels)
    if len(declared) != len(labels):
        raise PseudomanifoldInputError("vertex labels must be distinct")

    adjacency: dict[str, set[str]] = {v: set() for v in labels}
    for pair in edge_pairs:
        u, v = (str(x) for x in pair)
        if u not in declared or v not in declared:
            missing = u if u not in declared else v
            raise PseudomanifoldInputError(f"edge ({u}, {v}) references unknown label {missing!r}")
        if u == v:
            raise PseudomanifoldInputError(f"self-loop on {u!r}")
        adjacency[u].add(v)
        adjacency[v].add(u)
    return canonical_graph(labels, adjacency)


def empty_graph() -> Graph:
    return Graph(vertices=(), edges=())


def induced_subgraph(G: Graph, S: Iterable[str]) -> Graph:
    """
    Induced subgraph of G on the vertex set S.

    Raises:
        PseudomanifoldInputError: If S is not a subset of V(G).
    """
    keep = frozenset(S)
    if not keep <= G.vertex_set:
        unknown = sorted(keep - G.vertex_set)
        raise PseudomanifoldInputError(f"vertices not in graph: {unknown}")
    vertices = tuple(v for v in G.vertices if v in keep)
    edges = tuple((u, v) for u, v in G.edges if u in keep and v in keep)
    return Graph(vertices=vertices, edges=edges)


def unit_link(G: Graph, v: str) -> Graph:
    """Induced subgraph on the neighbors of v (never contains v)."""
    return induced_subgraph(G, G.neighbors(v))


def relabel(G: Graph, mapping: Mapping[str, str]) -> Graph:
    """Rename vertices; the mapping must be injective on V(G)."""
    renamed = [mapping.get(v, v) for v in G.vertices]
    if len(set(renamed)) != len(renamed):
        raise PseudomanifoldInputError("relabeling is not injective")
    return build_graph(renamed, [(mapping.get(u, u), mapping.get(v, v)) for u, v in G.edges])


def graph_union(G: Graph, H: Graph) -> Graph:
    """Union of vertex sets and edge sets (labels are shared, not namespaced)."""
    vertices = G.vertex_set | H.vertex_set
    adjacency: dict[str, set[str]] = {v: set() for v in vertices}
    for u, v in G.edges + H.edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    return canonical_graph(vertices, adjacency)


def is_complete(G: Graph) -> bool:
    n = G.order
    return G.size == n * (n - 1) // 2


def is_connected(G: Graph) -> bool:
    if G.order == 0:
        return False
    return nx.is_connected(to_networkx(G))


# ------------------------------------------------------------
# Cliques
# ------------------------------------------------------------

def maximal_simplices(G: Graph) -> list[Simplex]:
    """
    All inclusion-maximal cliques, by pivoted recursive expansion.

    Worst case is exponential in |V|; graphs here are desk scale.

    Returns:
        Simplices sorted by their vertex tuples.
    """
    adj = G.adjacency
    found: list[Simplex] = []

    def expand(clique: list[str], candidates: set[str], excluded: set[str]) -> None:
        if not candidates and not excluded:
            found.append(Simplex(tuple(sorted(clique))))
            return
        pool = candidates | excluded
        pivot = min(pool, key=lambda u: (-len(candidates & adj[u]), u))
        for v in sorted(candidates - adj[pivot]):
            expand(clique + [v], candidates & adj[v], excluded & adj[v])
            candidates.remove(v)
            excluded.add(v)

    if G.order:
        expand([], set(G.vertices), set())
    return sorted(found)


def simplices(G: Graph, size: int | None = None) -> list[Simplex]:
    """
    All nonempty cliques of G (or only those with `size` vertices).

    Cliques are generated by extending with larger labels only, so each
    appears once; the result is sorted by vertex tuple.
    """
    adj = G.adjacency
    out: list[Simplex] = []

    def extend(clique: tuple[str, ...], candidates: list[str]) -> None:
        if size is None or len(clique) == size:
            out.append(Simplex(clique))
        if size is not None and len(clique) >= size:
            return
        for i, v in enumerate(candidates):
            extend(clique + (v,), [w for w in candidates[i + 1:] if w in adj[v]])

    for i, v in enumerate(G.vertices):
        extend((v,), [w for w in G.vertices[i + 1:] if w in adj[v]])
    return sorted(out)


def is_simplex(G: Graph, vertices: Iterable[str]) -> bool:
    vs = list(vertices)
    return all(v in G for v in vs) and all(
        G.has_edge(u, w) for i, u in enumerate(vs) for w in vs[i + 1:]
    )


def dimension(G: Graph) -> int:
    """Clique number minus one; -1 for the empty graph."""
    return max((s.dimension for s in maximal_simplices(G)), default=-1)


def cycle_length(G: Graph) -> int | None:
    """n if G is exactly one cycle C_n (connected and 2-regular), else None."""
    if G.order < 3 or G.size != G.order:
        return None
    if any(len(nbrs) != 2 for nbrs in G.adjacency.values()):
        return None
    return G.order if is_connected(G) else None


# ------------------------------------------------------------
# Isomorphism
# ------------------------------------------------------------

def _triangles_at(G: Graph, v: str) -> int:
    nbrs = G.adjacency[v]
    return sum(len(nbrs & G.adjacency[u]) for u in nbrs) // 2


def _refine(G: Graph, H: Graph) -> tuple[dict[str, int], dict[str, int]] | None:
    """
    Joint color refinement of G and H.

    Colors are numbered from a shared table each round so classes are
    comparable across the two graphs. Returns None as soon as the class
    histograms differ.
    """
    def initial(X: Graph) -> dict[str, tuple]:
        return {v: (len(X.adjacency[v]), _triangles_at(X, v)) for v in X.vertices}

    sig_g, sig_h = initial(G), initial(H)
    classes = -1
    while True:
        table = {sig: i for i, sig in enumerate(sorted(set(sig_g.values()) | set(sig_h.values())))}
        col_g = {v: table[s] for v, s in sig_g.items()}
        col_h = {v: table[s] for v, s in sig_h.items()}
        if sorted(col_g.values()) != sorted(col_h.values()):
            return None
        if len(table) == classes:
            return col_g, col_h
        classes = len(table)
        sig_g = {v: (col_g[v], tuple(sorted(col_g[u] for u in G.adjacency[v]))) for v in G.vertices}
        sig_h = {v: (col_h[v], tuple(sorted(col_h[u] for u in H.adjacency[v]))) for v in H.vertices}


def _search_order(G: Graph, colors: dict[str, int]) -> list[str]:
    """Small color classes first, then grow along edges so each step is constrained."""
    class_size: dict[int, int] = {}
    for c in colors.values():
        class_size[c] = class_size.get(c, 0) + 1
    remaining = set(G.vertices)
    order: list[str] = []
    while remaining:
        frontier = [v for v in remaining if G.adjacency[v] & set(order)]
        pool = frontier or list(remaining)
        v = min(pool, key=lambda u: (-len(G.adjacency[u] & set(order)), class_size[colors[u]], u))
        order.append(v)
        remaining.remove(v)
    return order


def is_isomorphic(G: Graph, H: Graph) -> bool:
    """
    True iff some label bijection preserves adjacency.

    Degree/triangle signatures and joint color refinement prune before a
    backtracking search. Intended for graphs with up to ~32 vertices; larger
    highly symmetric inputs may be slow.
    """
    if G.order != H.order or G.size != H.size:
        return False
    refined = _refine(G, H)
    if refined is None:
        return False
    col_g, col_h = refined
    order = _search_order(G, col_g)
    by_color: dict[int, list[str]] = {}
    for v in H.vertices:
        by_color.setdefault(col_h[v], []).append(v)

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        mapped_nbrs = [(u, mapping[u]) for u in G.adjacency[v] if u in mapping]
        for w in by_color[col_g[v]]:
            if w in used:
                continue
            if any(x not in H.adjacency[w] for _, x in mapped_nbrs):
                continue
            # non-neighbors must stay non-neighbors
            if len(H.adjacency[w] & used) != len(mapped_nbrs):
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return extend(0)


# ------------------------------------------------------------
# Standard graphs
# ------------------------------------------------------------

def vertex_names(n: int, prefix: str = "") -> list[str]:
    """Labels whose lexicographic order matches index order."""
    if n <= 26:
        return [f"{prefix}{c}" for c in string.ascii_lowercase[:n]]
    width = len(str(n - 1))
    return [f"{prefix}v{i:0{width}d}" for i in range(n)]


def complete_graph(n: int, prefix: str = "") -> Graph:
    names = vertex_names(n, prefix)
    return build_graph(names, [(u, v) for i, u in enumerate(names) for v in names[i + 1:]])


def cycle_graph(n: int, prefix: str = "") -> Graph:
    if n < 3:
        raise PseudomanifoldInputError(f"a cycle needs at least 3 vertices, got {n}")
    names = vertex_names(n, prefix)
    return build_graph(names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def path_graph(n: int, prefix: str = "") -> Graph:
    names = vertex_names(n, prefix)
    return build_graph(names, list(zip(names, names[1:])))


def wheel_graph(n: int) -> Graph:
    """Hub `hub` joined to a rim cycle C_n."""
    rim = cycle_graph(n)
    return build_graph(rim.vertices + ("hub",), list(rim.edges) + [("hub", v) for v in rim.vertices])


def two_point_graph(prefix: str = "") -> Graph:
    """S^0: two isolated vertices."""
    return build_graph([f"{prefix}a", f"{prefix}b"], [])


def one_point_graph() -> Graph:
    """The one-point graph `1` (K1 with the reserved label)."""
    return build_graph([ONE_POINT_LABEL], [])


# ------------------------------------------------------------
# networkx interchange
# ------------------------------------------------------------

def to_networkx(G: Graph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(G.vertices)
    graph.add_edges_from(G.edges)
    return graph


def from_networkx(graph: nx.Graph) -> Graph:
    return build_graph([str(v) for v in graph.nodes], [(str(u), str(v)) for u, v in graph.edges])
