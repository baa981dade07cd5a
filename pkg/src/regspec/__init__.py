"""Spectra, closed walks and odd-cycle statistics of regular graphs, with
machine checks of the trace-method eigenvalue-count bounds."""

from .graph_core import Graph, from_edge_list, read_graph, regularity, write_graph
from .generators import generate, parse_spec
from .spectra import Spectrum, graph_spectrum
from .serre import constants, verify_theorem1, verify_theorem3

__all__ = [
    "Graph",
    "Spectrum",
    "constants",
    "from_edge_list",
    "generate",
    "graph_spectrum",
    "parse_spec",
    "read_graph",
    "regularity",
    "verify_theorem1",
    "verify_theorem3",
    "write_graph",
]
