"""
Coloring Module.

Vertex colorings of pseudomanifolds and general graphs:
- exact chromatic number by branch and bound (clique lower bound, DSATUR upper bound)
- first-fit greedy and DSATUR heuristics
- join colorings with disjoint palettes
- the dual-forest coloring procedure for certified pseudomanifolds

Design principles:
- Deterministic: vertices by saturation, then descending degree, then label;
  colors in ascending index
- A timed-out exact call returns an interval, never a wrong exact value
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import count
import threading
import time

from app.analyser.arithmetic import disjoint_labels
from app.analyser.duality import DualGraph, dual_graph, forest_peel
from app.analyser.graph_core import Graph, dimension
from app.core.errors import PseudomanifoldInputError
from app.core.logger_config import get_logger
from app.store.models import Coloring, PmCertificate

logger = get_logger(__name__)

_SPLIT_DEPTH = 4


class _BudgetExceeded(Exception):
    pass


@dataclass
class ChromaticResult:
    """Chromatic number interval and a proper coloring achieving the upper end."""

    lower: int
    upper: int
    coloring: Coloring
    timed_out: bool = False

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int | None:
        return self.upper if self.is_exact else None


class _SharedBound:
    """Best palette size found so far; only ever decreases."""

    def __init__(self, value: int, colors: list[int] | None):
        self._lock = threading.Lock()
        self.value = value
        self.colors = colors

    def offer(self, value: int, colors: list[int]) -> None:
        with self._lock:
            if value < self.value:
                self.value = value
                self.colors = list(colors)


class _Search:
    """Depth-first branch and bound over partial colorings (indices in label order)."""

    def __init__(self, G: Graph, bound: _SharedBound, floor: int, deadline: float | None):
        self.names = list(G.vertices)
        index = {v: i for i, v in enumerate(self.names)}
        self.adj = [[index[u] for u in sorted(G.adjacency[v])] for v in self.names]
        self.degree = [len(a) for a in self.adj]
        self.bound = bound
        self.floor = floor
        self.deadline = deadline
        self.nodes = 0

    def _select(self, colors: list[int]) -> int:
        best, best_key = -1, None
        for v, c in enumerate(colors):
            if c >= 0:
                continue
            saturation = len({colors[u] for u in self.adj[v] if colors[u] >= 0})
            key = (saturation, self.degree[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def _options(self, colors: list[int], v: int, used: int) -> list[int]:
        forbidden = {colors[u] for u in self.adj[v]}
        return [c for c in range(min(used + 1, self.bound.value - 1)) if c not in forbidden]

    def run(self, colors: list[int] | None = None) -> None:
        colors = list(colors) if colors is not None else [-1] * len(self.names)
        used = max(colors, default=-1) + 1
        self._branch(colors, used, sum(1 for c in colors if c >= 0))

    def _branch(self, colors: list[int], used: int, colored: int) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExceeded()
        if used >= self.bound.value:
            return
        if colored == len(colors):
            self.bound.offer(used, colors)
            return
        v = self._select(colors)
        for c in self._options(colors, v, used):
            if self.bound.value <= self.floor or c + 1 >= self.bound.value:
                return
            colors[v] = c
            self._branch(colors, max(used, c + 1), colored + 1)
            colors[v] = -1

    def frontier(self, depth: int) -> list[list[int]]:
        """Partial colorings of the first `depth` branching vertices, in search order."""
        out: list[list[int]] = []

        def collect(colors: list[int], used: int, colored: int) -> None:
            if colored == min(depth, len(colors)):
                out.append(list(colors))
                return
            v = self._select(colors)
            for c in self._options(colors, v, used):
                colors[v] = c
                collect(colors, max(used, c + 1), colored + 1)
                colors[v] = -1

        collect([-1] * len(self.names), 0, 0)
        return out

    def to_coloring(self, colors: list[int]) -> Coloring:
        return Coloring(palette_size=max(colors, default=-1) + 1, assignment=dict(zip(self.names, colors)))


def _find_k_coloring(G: Graph, k: int, deadline: float | None) -> list[int] | None:
    """First coloring with at most k colors in search order, or None."""
    bound = _SharedBound(k + 1, None)
    _Search(G, bound, floor=k, deadline=deadline).run()
    return bound.colors


def dsatur_coloring(G: Graph) -> Coloring:
    """Saturation-degree greedy coloring (ties: degree, then label)."""
    search = _Search(G, _SharedBound(G.order + 1, None), floor=0, deadline=None)
    colors = [-1] * G.order
    for _ in range(G.order):
        v = search._select(colors)
        forbidden = {colors[u] for u in search.adj[v]}
        colors[v] = next(c for c in count() if c not in forbidden)
    return search.to_coloring(colors)


def chromatic_number_exact(
    G: Graph,
    budget: float | None = None,
    jobs: int = 1,
    deterministic: bool = True,
) -> ChromaticResult:
    """
    Exact chromatic number with a witness coloring.

    Args:
        G: The graph.
        budget: Time limit in seconds; None means unlimited.
        jobs: Worker threads; subtrees below a fixed split depth are shared
              out and prune against one best-so-far bound.
        deterministic: Re-derive the witness with a sequential search so it
              does not depend on worker scheduling.

    Returns:
        ChromaticResult; on timeout lower < upper and timed_out is set.
    """
    if G.order == 0:
        return ChromaticResult(0, 0, Coloring(palette_size=0, assignment={}))

    started = time.monotonic()
    deadline = started + budget if budget is not None else None
    lower = dimension(G) + 1
    greedy = dsatur_coloring(G)
    index = {v: i for i, v in enumerate(G.vertices)}
    initial = [0] * G.order
    for v, c in greedy.assignment.items():
        initial[index[v]] = c
    bound = _SharedBound(greedy.palette_size, initial)
    root = _Search(G, bound, lower, deadline)
    logger.info("exact coloring of %s vertices: clique bound %s, greedy %s", G.order, lower, bound.value)

    try:
        if bound.value > lower:
            if jobs > 1:
                subproblems = root.frontier(_SPLIT_DEPTH)
                with ThreadPoolExecutor(max_workers=jobs) as pool:
                    futures = [pool.submit(_Search(G, bound, lower, deadline).run, sub) for sub in subproblems]
                    for future in futures:
                        future.result()
            else:
                root.run()
    except _BudgetExceeded:
        logger.warning("exact coloring hit its %ss budget: interval [%s, %s]", budget, lower, bound.value)
        return ChromaticResult(lower, bound.value, root.to_coloring(bound.colors), timed_out=True)

    chromatic = bound.value
    colors = bound.colors
    if deterministic:
        try:
            colors = _find_k_coloring(G, chromatic, deadline) or colors
        except _BudgetExceeded:
            logger.warning("canonical witness search ran out of budget; keeping the search witness")
    logger.info("chromatic number %s found in %.3fs", chromatic, time.monotonic() - started)
    return ChromaticResult(chromatic, chromatic, root.to_coloring(colors))


def greedy_coloring(G: Graph, order: list[str]) -> Coloring:
    """
    First-fit coloring along `order`.

    Raises:
        PseudomanifoldInputError: If order is not a permutation of V(G).
    """
    if len(order) != G.order or set(order) != G.vertex_set:
        raise PseudomanifoldInputError("order must be a permutation of the vertices")
    assignment: dict[str, int] = {}
    for v in order:
        taken = {assignment[u] for u in G.adjacency[v] if u in assignment}
        assignment[v] = next(c for c in count() if c not in taken)
    return Coloring(palette_size=len(set(assignment.values())), assignment=assignment)


def verify_coloring(G: Graph, c: Coloring) -> bool:
    """True iff the coloring is total on V(G), within its palette and proper."""
    if set(c.assignment) != G.vertex_set:
        return False
    if any(not 0 <= color < c.palette_size for color in c.assignment.values()):
        return False
    return all(c.assignment[u] != c.assignment[v] for u, v in G.edges)


def join_coloring(G: Graph, cG: Coloring, H: Graph, cH: Coloring) -> Coloring:
    """
    Coloring of G + H from colorings of the factors: H's colors shift by cG.palette_size.

    Labels follow the same namespacing as zykov_join.

    Raises:
        PseudomanifoldInputError: If either input coloring is not proper.
    """
    if not verify_coloring(G, cG) or not verify_coloring(H, cH):
        raise PseudomanifoldInputError("join coloring needs proper colorings of both factors")
    map_g, map_h = disjoint_labels(G, H)
    assignment = {map_g[v]: color for v, color in cG.assignment.items()}
    assignment.update({map_h[v]: color + cG.palette_size for v, color in cH.assignment.items()})
    return Coloring(palette_size=cG.palette_size + cH.palette_size, assignment=assignment)


def _propagate(D: DualGraph, forest: tuple[tuple[int, int], ...], batch: int) -> dict[str, int]:
    """
    Color facets tree by tree with `batch` colors, handing each child facet
    its parent's colors on the shared face and the dropped color on the new vertex.

    Returns the first color each vertex received.
    """
    nbrs: dict[int, list[int]] = {}
    for u, w in forest:
        nbrs.setdefault(u, []).append(w)
        nbrs.setdefault(w, []).append(u)
    first: dict[str, int] = {}
    seen: set[int] = set()

    for root in sorted(nbrs):
        if root in seen:
            continue
        seen.add(root)
        palette: dict[str, int] = {}
        for v in D.facets[root].vertices:
            if v in first and first[v] not in palette.values():
                palette[v] = first[v]
        free = iter(c for c in range(batch) if c not in palette.values())
        for v in D.facets[root].vertices:
            if v not in palette:
                palette[v] = next(free)
        facet_colors = {root: palette}
        stack = [root]
        while stack:
            f = stack.pop()
            for v, c in facet_colors[f].items():
                first.setdefault(v, c)
            for g in sorted(nbrs[f]):
                if g in seen:
                    continue
                seen.add(g)
                parent = facet_colors[f]
                shared = set(D.facets[g].vertices)
                (dropped,) = set(parent) - shared
                (added,) = shared - set(parent)
                child = {v: c for v, c in parent.items() if v != dropped}
                child[added] = parent[dropped]
                facet_colors[g] = child
                stack.append(g)
    return first


def forest_coloring(K: Graph, certificate: PmCertificate) -> Coloring:
    """
    Dual-forest coloring of a certified d-pseudomanifold.

    The dual graph is peeled into forests; the first two forests color
    facets with batches [0, d+1) and [d+1, 2d+2). Vertices take their
    first-forest color, else their second, else the smallest color free
    among already colored neighbors. Colors are compacted at the end.

    Raises:
        PseudomanifoldInputError: If the certificate is a rejection or does
            not match the graph's dimension.
    """
    if not certificate.accepted:
        raise PseudomanifoldInputError("forest coloring needs an accepted certificate")
    d = certificate.dimension
    if dimension(K) != d:
        raise PseudomanifoldInputError(f"certificate is for d={d}, graph has dimension {dimension(K)}")

    D = dual_graph(K)
    peel = forest_peel(D)
    batch = d + 1
    candidates: dict[str, list[int]] = {v: [] for v in K.vertices}
    for b, forest in enumerate(peel.forests[:2]):
        for v, c in _propagate(D, forest, batch).items():
            candidates[v].append(b * batch + c)

    final: dict[str, int] = {}
    for v in K.vertices:
        taken = {final[u] for u in K.adjacency[v] if u in final}
        choice = next((c for c in candidates[v] if c not in taken), None)
        final[v] = choice if choice is not None else next(c for c in count() if c not in taken)

    compact = {c: i for i, c in enumerate(sorted(set(final.values())))}
    coloring = Coloring(palette_size=len(compact), assignment={v: compact[c] for v, c in final.items()})
    if coloring.palette_size > 2 * d + 2:
        logger.warning("forest coloring used %s colors, above 2d+2 = %s", coloring.palette_size, 2 * d + 2)
    return coloring
