from .corona import (
    CoronaSpec,
    DegreeReport,
    build_sym_group_graph,
    corona,
    cumulative_edge_count,
    degree_check,
    edge_count,
    find_vertex,
    halves_check,
    locate,
    nested_corona,
    pi_factor,
    vertex_count,
)
from .export import to_dot, to_json

__all__ = [
    "CoronaSpec",
    "DegreeReport",
    "build_sym_group_graph",
    "corona",
    "cumulative_edge_count",
    "degree_check",
    "edge_count",
    "find_vertex",
    "halves_check",
    "locate",
    "nested_corona",
    "pi_factor",
    "vertex_count",
    "to_dot",
    "to_json",
]
