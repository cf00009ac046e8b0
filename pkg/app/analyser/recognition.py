"""
Recognition Module.

Recursive certification of discrete d-pseudomanifolds:
- d = -1: the empty graph
- d = 0: a nonempty graph without edges (every unit link is empty)
- d = 1: exactly one cycle C_n with n >= 4
- d >= 2: nonempty, and every unit link certifies at d - 1

Rejections are values carrying a replayable witness, never exceptions.
"""

from concurrent.futures import ThreadPoolExecutor

from app.analyser.graph_core import Graph, cycle_length, dimension, unit_link
from app.core.errors import PseudomanifoldInputError
from app.core.logger_config import get_logger
from app.store.models import PmCertificate, Witness, WitnessReason

logger = get_logger(__name__)

_Verdict = tuple[bool, tuple[str, ...], WitnessReason | None]


class _Certifier:
    """One certification call; memoizes sub-verdicts by (canonical graph, level)."""

    def __init__(self) -> None:
        self._memo: dict[tuple[Graph, int], _Verdict] = {}

    def certify(self, G: Graph, d: int) -> _Verdict:
        key = (G, d)
        if key not in self._memo:
            self._memo[key] = self._certify(G, d)
        return self._memo[key]

    def _certify(self, G: Graph, d: int) -> _Verdict:
        if d == -1:
            return (True, (), None) if G.order == 0 else (False, (), "empty-expected")
        if G.order == 0:
            return False, (), "link-dimension-mismatch"
        if d == 1:
            n = cycle_length(G)
            if n is None:
                return False, (), "not-a-cycle"
            if n < 4:
                return False, (), "cycle-too-short"
            return True, (), None
        for v in G.vertices:
            verdict = self.certify_link(G, v, d)
            if not verdict[0]:
                return verdict
        return True, (), None

    def certify_link(self, G: Graph, v: str, d: int) -> _Verdict:
        ok, path, reason = self.certify(unit_link(G, v), d - 1)
        return (True, (), None) if ok else (False, (v,) + path, reason)


def _certificate(d: int, verdict: _Verdict) -> PmCertificate:
    ok, path, reason = verdict
    if ok:
        return PmCertificate(dimension=d, verdict="accept")
    return PmCertificate(dimension=d, verdict="reject", witness=Witness(path=list(path), reason=reason))


def is_pseudomanifold(G: Graph, d: int, jobs: int = 1) -> PmCertificate:
    """
    Certify G as a d-pseudomanifold.

    Args:
        G: The graph.
        d: Target dimension, d >= -1.
        jobs: Workers for the top-level per-vertex link certification.
              The witness is always the one at the smallest failing vertex,
              so the result does not depend on scheduling.

    Returns:
        PmCertificate with verdict accept or reject (plus witness).
    """
    if d < -1:
        raise PseudomanifoldInputError(f"dimension must be >= -1, got {d}")

    if jobs > 1 and d >= 2 and G.order > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            # each worker gets its own memo table
            verdicts = list(pool.map(lambda v: _Certifier().certify_link(G, v, d), G.vertices))
        failing = next((vd for vd in verdicts if not vd[0]), (True, (), None))
        verdict = failing
    else:
        verdict = _Certifier().certify(G, d)

    if verdict[0] and d >= 0:
        # purity follows from the recursion
        assert dimension(G) == d, f"accepted at {d} but clique dimension is {dimension(G)}"
    logger.debug("certified %s vertices at d=%s: %s", G.order, d, "accept" if verdict[0] else verdict[2])
    return _certificate(d, verdict)


def pseudomanifold_dimension(G: Graph, jobs: int = 1) -> int | None:
    """The d = dimension(G) at which G certifies, or None."""
    d = dimension(G)
    return d if is_pseudomanifold(G, d, jobs=jobs).accepted else None


def is_subpseudomanifold(Ksub: Graph, K: Graph) -> bool:
    """True iff Ksub is a pseudomanifold whose vertices and edges lie in K."""
    if not Ksub.vertex_set <= K.vertex_set:
        return False
    if not all(K.has_edge(u, v) for u, v in Ksub.edges):
        return False
    return pseudomanifold_dimension(Ksub) is not None


def replay_witness(G: Graph, certificate: PmCertificate) -> Graph:
    """Follow the witness path through unit links and return the offending subgraph."""
    if certificate.witness is None:
        raise PseudomanifoldInputError("certificate has no witness to replay")
    current = G
    for v in certificate.witness.path:
        current = unit_link(current, v)
    return current


def _shape(H: Graph) -> str:
    n = cycle_length(H)
    if n is not None:
        return f"C{n}"
    if H.order == 0:
        return "empty"
    if H.size == H.order * (H.order - 1) // 2:
        return f"K{H.order}"
    return f"a graph with {H.order} vertices and {H.size} edges"


def describe_witness(G: Graph, certificate: PmCertificate) -> str:
    """
    One-line explanation such as 'link of vertex a is C3 (cycle-too-short)'.

    Deeper witnesses name the first link too:
    'link of vertex a is C3; link of vertex b within the link of vertex a is K2 (not-a-cycle)'.
    """
    if certificate.witness is None:
        return f"accepted at d={certificate.dimension}"
    path = certificate.witness.path
    where = "graph"
    for v in path:
        where = f"link of vertex {v}" if where == "graph" else f"link of vertex {v} within the {where}"
    detail = f"{where} is {_shape(replay_witness(G, certificate))} ({certificate.witness.reason})"
    if len(path) < 2:
        return detail
    return f"link of vertex {path[0]} is {_shape(unit_link(G, path[0]))}; {detail}"
