"""
Graph I/O Module.

Reads and writes graphs in the two supported formats:
- canonical Graph JSON (`{"vertices": [...], "edges": [[u, v], ...]}`)
- whitespace-separated edge-list text (`u v` per line, isolated vertices alone)
"""

from pathlib import Path
import sys

from pydantic import ValidationError

from app.analyser.graph_core import Graph, build_graph
from app.core.errors import PseudomanifoldInputError
from app.core.logger_config import get_logger
from app.store.models import GraphDocument

logger = get_logger(__name__)


def to_document(G: Graph) -> GraphDocument:
    return GraphDocument(vertices=list(G.vertices), edges=list(G.edges))


def from_document(doc: GraphDocument) -> Graph:
    return build_graph(doc.vertices, doc.edges)


def dumps_graph(G: Graph) -> str:
    return to_document(G).model_dump_json(indent=2) + "\n"


def parse_edge_list(text: str) -> Graph:
    """
    Parse edge-list text: `u v` per line, a lone label declares a vertex.

    Blank lines and lines starting with `#` are skipped.
    """
    vertices: list[str] = []
    seen: set[str] = set()
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) > 2:
            raise PseudomanifoldInputError(f"line {lineno}: expected 'u v' or a single label, got {line!r}")
        for label in parts:
            if label not in seen:
                seen.add(label)
                vertices.append(label)
        if len(parts) == 2:
            edges.append((parts[0], parts[1]))
    return build_graph(vertices, edges)


def loads_graph(text: str) -> Graph:
    """Parse Graph JSON, or edge-list text when the input is not a JSON object."""
    if text.lstrip().startswith("{"):
        try:
            return from_document(GraphDocument.model_validate_json(text))
        except ValidationError as exc:
            logger.error("Malformed graph JSON: %s", exc)
            raise PseudomanifoldInputError(f"malformed graph JSON: {exc.errors()[0]['msg']}") from exc
    return parse_edge_list(text)


def read_graph(path: str | Path = "-") -> Graph:
    """Read a graph from a file, or from standard input when path is '-'."""
    if str(path) == "-":
        return loads_graph(sys.stdin.read())
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PseudomanifoldInputError(f"cannot read {path}: {exc.strerror}") from exc
    return loads_graph(text)


def write_text(text: str, path: str | Path | None = None) -> None:
    """Write to a file, or to standard output when no path is given."""
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(path).write_text(text)


def write_graph(G: Graph, path: str | Path | None = None) -> None:
    write_text(dumps_graph(G), path)
