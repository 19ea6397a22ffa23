"""
Corona 乘積與對稱群圖 S_N^G

G∘H: 一份 G 加上 |V(G)| 份 H，G 的第 i 個頂點與第 i 份 H 的所有頂點相連。
巢狀 corona 為左結合的迭代: (((G_0∘G_1)∘G_2)...)∘G_{N-2}
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from config.settings import GRAPH_MAX_N
from src.permutations.core import decompose
from src.permutations.models import PermutationArray, PiSet, PiVariant, TranspositionWord
from src.utils.exceptions import DomainError, ResourceLimitError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoronaSpec:
    """巢狀 corona 的因子圖 G_0, ..., G_{N-2}"""

    factors: Tuple[nx.Graph, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for j, g in enumerate(self.factors):
            _check_simple(g, f"G_{j}")

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(g.number_of_nodes() for g in self.factors)

    @property
    def edge_sizes(self) -> Tuple[int, ...]:
        return tuple(g.number_of_edges() for g in self.factors)


@dataclass
class DegreeReport:
    """度數公式檢查結果"""

    checked: int = 0
    counterexamples: List[Dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "counterexamples": self.counterexamples,
        }


def _check_simple(graph: nx.Graph, name: str) -> None:
    if graph.number_of_nodes() == 0:
        raise DomainError(f"{name} 不可為空圖")
    if graph.is_directed() or graph.is_multigraph():
        raise DomainError(f"{name} 必須是簡單無向圖")
    if nx.number_of_selfloops(graph) > 0:
        raise DomainError(f"{name} 含有自迴圈")


def _base_copy(graph: nx.Graph) -> nx.Graph:
    """將基底圖重新編號為 0..n-1，並補上來源資訊"""
    result = nx.Graph()
    mapping = {v: i for i, v in enumerate(graph.nodes)}
    for v, data in graph.nodes(data=True):
        attrs = dict(data)
        attrs.setdefault("factor", 0)
        attrs.setdefault("copy", 0)
        attrs.setdefault("position", mapping[v] + 1)
        attrs.setdefault("anchor", None)
        attrs.setdefault("factor_degree", graph.degree(v))
        result.add_node(mapping[v], **attrs)
    result.add_edges_from((mapping[u], mapping[v]) for u, v in graph.edges)
    result.graph.update(graph.graph)
    return result


def corona(base: nx.Graph, factor: nx.Graph, factor_index: Optional[int] = None) -> nx.Graph:
    """
    corona 乘積 G∘H

    Args:
        base: G (非空)
        factor: H
        factor_index: 記錄在新頂點上的因子編號 (預設為基底既有最大編號 + 1)

    Returns:
        networkx.Graph，|V| = |V(G)|(1 + |V(H)|)
    """
    _check_simple(base, "G")
    if factor.number_of_nodes() > 0:
        _check_simple(factor, "H")

    result = _base_copy(base)
    if factor_index is None:
        factor_index = max(d["factor"] for _, d in result.nodes(data=True)) + 1

    factor_nodes = list(factor.nodes)
    local = {u: s for s, u in enumerate(factor_nodes)}
    next_id = result.number_of_nodes()

    for copy_no, anchor in enumerate(list(result.nodes), start=1):
        ids = {}
        for s, u in enumerate(factor_nodes):
            attrs = dict(factor.nodes[u])
            attrs.update(
                factor=factor_index,
                copy=copy_no,
                position=s + 1,
                anchor=anchor,
                factor_degree=factor.degree(u),
            )
            ids[u] = next_id
            result.add_node(next_id, **attrs)
            result.add_edge(anchor, next_id)
            next_id += 1
        result.add_edges_from((ids[u], ids[v]) for u, v in factor.edges)

    logger.debug(
        f"corona: |V(G)|={base.number_of_nodes()}, |V(H)|={len(local)} → |V|={result.number_of_nodes()}"
    )
    return result


def nested_corona(spec: Union[CoronaSpec, Sequence[nx.Graph]]) -> nx.Graph:
    """
    左結合巢狀 corona 乘積

    每一階段都驗證 |V(G^k)| = |V(G^{k-1})|(1 + n_{k-1})

    Args:
        spec: CoronaSpec 或因子圖列表 (至少兩個)

    Returns:
        networkx.Graph
    """
    if not isinstance(spec, CoronaSpec):
        spec = CoronaSpec(tuple(spec))
    if len(spec.factors) < 2:
        raise DomainError(f"巢狀 corona 至少需要兩個因子，實際 {len(spec.factors)} 個")

    graph = _base_copy(spec.factors[0])
    stage_vertices = [graph.number_of_nodes()]
    for j, factor in enumerate(spec.factors[1:], start=1):
        graph = corona(graph, factor, factor_index=j)
        expected = stage_vertices[-1] * (1 + factor.number_of_nodes())
        if graph.number_of_nodes() != expected:
            raise AssertionError(f"第 {j} 階段頂點數 {graph.number_of_nodes()} != {expected}")
        stage_vertices.append(graph.number_of_nodes())

    graph.graph["factor_sizes"] = spec.sizes
    graph.graph["factor_edges"] = spec.edge_sizes
    graph.graph["stage_vertices"] = tuple(stage_vertices)
    return graph


def vertex_count(sizes: Sequence[int]) -> int:
    """n_0 (1+n_1)(1+n_2)...(1+n_{N-2})"""
    return sizes[0] * math.prod(1 + n for n in sizes[1:])


def edge_count(sizes: Sequence[int], edge_sizes: Sequence[int]) -> int:
    """
    巢狀 corona 的邊數

    第 j+1 個因子附著在當時的每一個頂點上，複本數為 |V(G^{j+1})| = n_0 ∏_{l<=j}(1+n_l)
    """
    total = edge_sizes[0]
    for j in range(len(sizes) - 1):
        copies = vertex_count(sizes[: j + 1])
        total += copies * (sizes[j + 1] + edge_sizes[j + 1])
    return total


def cumulative_edge_count(sizes: Sequence[int], edge_sizes: Sequence[int]) -> int:
    """以累加和 (n_0+...+n_j) 作為複本數的公式 (三個以上因子時低估)"""
    return edge_sizes[0] + sum(
        sum(sizes[: j + 1]) * (sizes[j + 1] + edge_sizes[j + 1]) for j in range(len(sizes) - 1)
    )


def pi_factor(k: int) -> nx.Graph:
    """
    Π_0^G (k=0，頂點 I 與 s_0 的一條邊) 或 Π̄_k^G (k>=1，k+1 個頂點的路徑)

    頂點屬性 word 為 Π 元素，pi_index 為其在 Π_k 完整順序中的索引
    """
    if k == 0:
        words = PiSet(0).elements()
        offset = 0
    else:
        words = PiSet(k, PiVariant.BARRED).elements()
        offset = 1

    graph = nx.path_graph(len(words))
    for s, word in enumerate(words):
        graph.nodes[s]["word"] = word
        graph.nodes[s]["pi_index"] = s + offset
    return graph


def build_sym_group_graph(n_symbols: int) -> nx.Graph:
    """
    建立對稱群的巢狀 corona 圖 S_N^G

    附著於標記 π 的頂點上的 Π̄_k 複本，其頂點標記為 π s_k, π s_k s_{k-1}, ...

    Args:
        n_symbols: 符號數 N (>= 2)

    Returns:
        networkx.Graph，頂點屬性 label (字母 tuple) 與 choices (各 slot 的 Π 索引)
    """
    if n_symbols < 2:
        raise DomainError(f"N 必須 >= 2: {n_symbols}")
    if n_symbols > GRAPH_MAX_N:
        raise ResourceLimitError(
            f"N={n_symbols} 超過建圖上限 {GRAPH_MAX_N} ({math.factorial(n_symbols)} 個頂點)"
        )

    factors = [pi_factor(k) for k in range(n_symbols - 1)]
    if n_symbols == 2:
        graph = _base_copy(factors[0])
        graph.graph["factor_sizes"] = (2,)
        graph.graph["factor_edges"] = (1,)
        graph.graph["stage_vertices"] = (2,)
    else:
        graph = nested_corona(CoronaSpec(tuple(factors)))

    slots = n_symbols - 1
    # 新頂點編號一定大於其附著頂點，依編號順序即可逐一標記
    for v in sorted(graph.nodes):
        data = graph.nodes[v]
        if data["anchor"] is None:
            label: Tuple[int, ...] = ()
            choices = [0] * slots
        else:
            parent = graph.nodes[data["anchor"]]
            label = parent["label"]
            choices = list(parent["choices"])
        data["label"] = label + tuple(data["word"])
        choices[data["factor"]] = data["pi_index"]
        data["choices"] = tuple(choices)

    graph.graph["n_symbols"] = n_symbols
    logger.info(
        f"S_{n_symbols}^G: {graph.number_of_nodes()} 個頂點, {graph.number_of_edges()} 條邊"
    )
    return graph


def _require_labels(graph: nx.Graph) -> None:
    if "n_symbols" not in graph.graph or any("label" not in d for _, d in graph.nodes(data=True)):
        raise ValidationError("圖未標記，請使用 build_sym_group_graph 建立")


def degree_check(graph: nx.Graph) -> DegreeReport:
    """
    驗證每個頂點的度數

    附著複本 (j >= 1): 1 + d_s + Σ_{l>j} n_l；G_0 的頂點: d_s + Σ_{l>=1} n_l

    Args:
        graph: build_sym_group_graph 的輸出

    Returns:
        DegreeReport
    """
    _require_labels(graph)
    sizes = graph.graph["factor_sizes"]

    report = DegreeReport()
    for v, data in graph.nodes(data=True):
        j = data["factor"]
        later = sum(sizes[j + 1:])
        expected = data["factor_degree"] + later + (1 if j >= 1 else 0)
        actual = graph.degree(v)
        report.checked += 1
        if actual != expected:
            report.counterexamples.append(
                {"vertex": v, "label": list(data["label"]), "expected": expected, "actual": actual}
            )

    if not report.passed:
        logger.warning(f"度數檢查失敗: {len(report.counterexamples)} 個頂點")
    return report


def _label_index(graph: nx.Graph) -> Dict[Tuple[int, ...], int]:
    index = graph.graph.get("label_index")
    if index is None:
        index = {data["label"]: v for v, data in graph.nodes(data=True)}
        graph.graph["label_index"] = index
    return index


def find_vertex(graph: nx.Graph, target: Union[PermutationArray, TranspositionWord, Sequence[int]]) -> int:
    """以置換或轉置字找出頂點編號"""
    _require_labels(graph)
    if isinstance(target, PermutationArray):
        if target.n_symbols != graph.graph["n_symbols"]:
            raise ValidationError(f"置換大小 {target.n_symbols} 與 N={graph.graph['n_symbols']} 不符")
        letters = decompose(target).letters
    elif isinstance(target, TranspositionWord):
        letters = target.letters
    else:
        letters = tuple(target)

    vertex = _label_index(graph).get(tuple(letters))
    if vertex is None:
        raise ValidationError(f"轉置字 {list(letters)} 不是任何頂點的標記")
    return vertex


def locate(target, graph: nx.Graph) -> List[Tuple[int, int]]:
    """
    找出從根邊 {I, s_0} 到頂點的因子選擇序列

    回傳 slot 0 的選擇以及所有 slot >= 1 的非單位元選擇 (單位元頂點回傳空路徑)，
    可直接作為 sample_copy 的 pins

    Args:
        target: PermutationArray、TranspositionWord 或字母序列
        graph: build_sym_group_graph 的輸出

    Returns:
        [(slot, Π_k 完整順序索引)]
    """
    choices = graph.nodes[find_vertex(graph, target)]["choices"]
    if not any(choices):
        return []
    return [(0, choices[0])] + [(k, c) for k, c in enumerate(choices) if k >= 1 and c != 0]


def halves_check(graph: nx.Graph) -> Dict[str, object]:
    """
    移除邊 (I, s_0) 後檢查兩個連通分量大小相同，
    且翻轉 slot 0 選擇的雙射保持邊
    """
    _require_labels(graph)
    identity = find_vertex(graph, ())
    s0 = find_vertex(graph, (0,))

    pruned = graph.copy()
    pruned.remove_edge(identity, s0)
    components = [len(c) for c in nx.connected_components(pruned)]

    by_choices = {data["choices"]: v for v, data in graph.nodes(data=True)}

    def mirror(v: int) -> int:
        choices = list(graph.nodes[v]["choices"])
        choices[0] = 1 - choices[0]
        return by_choices[tuple(choices)]

    broken = [(u, v) for u, v in pruned.edges if not pruned.has_edge(mirror(u), mirror(v))]
    return {
        "components": components,
        "equal_halves": len(components) == 2 and components[0] == components[1],
        "edge_preserving": not broken,
        "broken_edges": broken,
    }
