"""Certified pseudomanifold corpora for the property suites and the probe report."""

from dataclasses import dataclass
import random

from app.analyser.arithmetic import cross_polytope, sphere_from_spec, suspension, zykov_join
from app.analyser.graph_core import Graph, cycle_graph, two_point_graph
from app.core.logger_config import get_logger
from app.service.bounds_service import SphereDecomposition
from app.store.models import SphereSpec

logger = get_logger(__name__)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: Graph
    dimension: int
    decomposition: SphereDecomposition | None = None


def _sphere_entry(cycles: list[int], suspensions: int = 0) -> CorpusEntry:
    spec = SphereSpec(cycle_lengths=cycles, suspension_count=suspensions)
    name = "+".join(f"C{n}" for n in cycles) + "+S0" * suspensions
    return CorpusEntry(name=name, graph=sphere_from_spec(spec), dimension=spec.dimension)


def _split_entry(sphere_cycles: list[int], remainder_cycles: list[int]) -> CorpusEntry:
    """S^k + K' with the split kept as construction metadata."""
    spec = SphereSpec(cycle_lengths=sphere_cycles)
    remainder = sphere_from_spec(SphereSpec(cycle_lengths=remainder_cycles))
    graph = zykov_join(sphere_from_spec(spec), remainder)
    name = "(" + "+".join(f"C{n}" for n in sphere_cycles) + ")+(" + "+".join(f"C{n}" for n in remainder_cycles) + ")"
    dim = spec.dimension + 2 * len(remainder_cycles)
    return CorpusEntry(name=name, graph=graph, dimension=dim, decomposition=SphereDecomposition(spec, remainder))


def pseudomanifold_corpus() -> list[CorpusEntry]:
    """Fixed corpus of certified instances, cycles up to dimension 5."""
    entries = [_sphere_entry([n]) for n in range(4, 13)]
    entries += [_sphere_entry([n], 1) for n in (4, 5, 6, 7)]
    entries += [_sphere_entry([n], 2) for n in (4, 5)]
    entries += [
        CorpusEntry(name=f"cross-polytope-{k}", graph=cross_polytope(k), dimension=k)
        for k in range(1, 5)
    ]
    entries += [_split_entry([a], [b]) for a, b in ((4, 4), (4, 5), (5, 5), (4, 6), (5, 6), (4, 7), (6, 7))]
    entries += [_split_entry([4], [4, 4]), _split_entry([4, 4], [5]), _split_entry([5], [5, 4])]
    entries.append(CorpusEntry(name="S0", graph=two_point_graph(), dimension=0))
    logger.debug("corpus built with %s entries", len(entries))
    return entries


def random_join_corpus(seed: int = 0, count: int = 10) -> list[CorpusEntry]:
    """
    Seeded random joins of one to three cycles (length 4..8) and up to two S^0.

    The first cycle is kept as the sphere factor of the decomposition.
    """
    rng = random.Random(seed)
    entries: list[CorpusEntry] = []
    for i in range(count):
        cycles = [rng.randint(4, 8) for _ in range(rng.randint(1, 3))]
        suspensions = rng.randint(0, 2 if len(cycles) < 3 else 0)
        remainder = sphere_from_spec(SphereSpec(cycle_lengths=cycles[1:]))
        for _ in range(suspensions):
            remainder = suspension(remainder)
        head = SphereSpec(cycle_lengths=cycles[:1])
        graph = zykov_join(cycle_graph(cycles[0], prefix="c0"), remainder)
        decomposition = SphereDecomposition(head, remainder) if remainder.order else None
        name = f"random-{i}:" + "+".join(f"C{n}" for n in cycles) + "+S0" * suspensions
        entries.append(CorpusEntry(name=name, graph=graph, dimension=2 * len(cycles) - 1 + suspensions,
                                   decomposition=decomposition))
    return entries
