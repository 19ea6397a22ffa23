"""
S_N^G 匯出 (JSON 鄰接表 / DOT)
"""

import logging
from typing import Any, Dict

import networkx as nx
from networkx.readwrite import json_graph

from src.utils.helpers import word_to_text

logger = logging.getLogger(__name__)

_EXPORT_ATTRS = ("factor", "copy", "position", "anchor")


def _export_view(graph: nx.Graph) -> nx.Graph:
    """只保留可序列化的頂點屬性，標記轉為 "s1 s0" 文字"""
    view = nx.Graph()
    for v, data in graph.nodes(data=True):
        attrs = {key: data[key] for key in _EXPORT_ATTRS if key in data}
        if "label" in data:
            attrs["label"] = word_to_text(data["label"])
        if "choices" in data:
            attrs["choices"] = list(data["choices"])
        view.add_node(v, **attrs)
    view.add_edges_from(graph.edges)
    return view


def to_json(graph: nx.Graph) -> Dict[str, Any]:
    """
    轉為 JSON 鄰接表

    Returns:
        {"N", "vertex_count", "edge_count", "graph": networkx adjacency_data}
    """
    payload = {
        "N": graph.graph.get("n_symbols"),
        "vertex_count": graph.number_of_nodes(),
        "edge_count": graph.number_of_edges(),
        "factor_sizes": list(graph.graph.get("factor_sizes", ())),
        "graph": json_graph.adjacency_data(_export_view(graph)),
    }
    return payload


def to_dot(graph: nx.Graph) -> str:
    """
    轉為 Graphviz DOT 文字 (需要 pydot)

    頂點以標記文字顯示，group 屬性為因子編號
    """
    view = nx.Graph()
    for v, data in graph.nodes(data=True):
        label = word_to_text(data["label"]) if "label" in data else str(v)
        view.add_node(v, label=label, group=str(data.get("factor", 0)))
    view.add_edges_from(graph.edges)

    dot = nx.nx_pydot.to_pydot(view)
    dot.set_name(f"S{graph.graph.get('n_symbols', '')}G")
    logger.debug(f"DOT 匯出: {view.number_of_nodes()} 個頂點")
    return dot.to_string()
