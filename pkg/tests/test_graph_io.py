import pytest

from app.analyser.graph_core import cycle_graph
from app.core.errors import PseudomanifoldInputError
from app.store.graph_io import dumps_graph, loads_graph, parse_edge_list, read_graph, write_graph


def test_dumps_is_canonical():
    text = dumps_graph(cycle_graph(3))
    assert text == (
        '{\n'
        '  "vertices": [\n    "a",\n    "b",\n    "c"\n  ],\n'
        '  "edges": [\n'
        '    [\n      "a",\n      "b"\n    ],\n'
        '    [\n      "a",\n      "c"\n    ],\n'
        '    [\n      "b",\n      "c"\n    ]\n'
        '  ]\n'
        '}\n'
    )


def test_loads_json_round_trip(octahedron):
    assert loads_graph(dumps_graph(octahedron)) == octahedron


def test_edge_list_with_isolated_vertex_and_comments():
    G = parse_edge_list("# square plus one\nb a\nb c\n\nc d\nd a\nq\n")
    assert G.vertices == ("a", "b", "c", "d", "q")
    assert G.size == 4
    assert loads_graph("a b\nb c\nc a\n") == cycle_graph(3)


@pytest.mark.parametrize(
    "text",
    [
        "a b c\n",
        "a a\n",
        '{"vertices": ["a"], "edges": [["a", "b"]]}',
        '{"vertices": "oops"}',
        '{"edges": []}',
    ],
)
def test_malformed_input_is_input_error(text):
    with pytest.raises(PseudomanifoldInputError):
        loads_graph(text)


def test_file_round_trip(tmp_path, octahedron):
    path = tmp_path / "oct.json"
    write_graph(octahedron, path)
    assert read_graph(path) == octahedron
    assert path.read_text() == dumps_graph(octahedron)


def test_missing_file_is_input_error(tmp_path):
    with pytest.raises(PseudomanifoldInputError):
        read_graph(tmp_path / "missing.json")
