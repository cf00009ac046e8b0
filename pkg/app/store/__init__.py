from .graph_io import dumps_graph, loads_graph, read_graph, write_graph

__all__ = ["dumps_graph", "loads_graph", "read_graph", "write_graph"]
