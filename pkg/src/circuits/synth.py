"""
相鄰轉置的量子電路合成

偶數 j = 2x: 單一廣義 Toffoli T_x (控制 q_{n-1}..q_1 須等於 x，目標 q_0)
奇數 j = (x,1): U_x · T_{x+1} · U_x，U_x 為以 q_0 控制、翻轉 x 與 x+1 相異位元的 CNOT 組
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Union

from src.permutations.models import PermutationArray, TranspositionWord
from src.utils.exceptions import DomainError, ValidationError
from src.utils.helpers import is_power_of_two

from .models import Circuit, Gate, GateKind

logger = logging.getLogger(__name__)


def _x_bits(x: int, n_qubits: int) -> tuple:
    """x 的 (n-1) 位元表示，最高位在前 (對應控制位元 q_{n-1} .. q_1)"""
    width = n_qubits - 1
    return tuple((x >> (width - 1 - i)) & 1 for i in range(width))


def _upper_controls(n_qubits: int) -> tuple:
    return tuple(range(n_qubits - 1, 0, -1))


def generalized_toffoli(x: int, n_qubits: int) -> Gate:
    """T^(n)_x: 上方 n-1 個量子位元等於 x 時翻轉 q_0"""
    if not 0 <= x < 2 ** (n_qubits - 1):
        raise DomainError(f"x={x} 超出 {n_qubits - 1} 位元範圍")
    return Gate.mcx(_upper_controls(n_qubits), _x_bits(x, n_qubits), 0)


def _u_x(x: int) -> List[Gate]:
    # x 的第 i 位元存放在內部量子位元 i+1；由高位到低位排列
    diff = x ^ (x + 1)
    return [Gate.cnot(0, i + 1) for i in range(diff.bit_length() - 1, -1, -1) if diff >> i & 1]


def synth_adjacent(j: int, n_qubits: int) -> Circuit:
    """
    合成 s_j = (j, j+1) 的電路

    Args:
        j: 轉置索引 0 <= j <= 2^n - 2
        n_qubits: 量子位元數 n >= 2

    Returns:
        Circuit (未降階，含控制樣式的 MCX)
    """
    if n_qubits < 2:
        raise DomainError(f"量子位元數必須 >= 2: {n_qubits}")
    if not 0 <= j <= 2 ** n_qubits - 2:
        raise DomainError(f"j={j} 超出範圍 [0, {2 ** n_qubits - 2}]")

    x, parity = divmod(j, 2)
    if parity == 0:
        return Circuit(n_qubits, (generalized_toffoli(x, n_qubits),))

    u_x = _u_x(x)
    gates = u_x + [generalized_toffoli(x + 1, n_qubits)] + u_x
    return Circuit(n_qubits, tuple(gates))


def lower_mcx(gate: Gate) -> List[Gate]:
    """
    將含控制樣式的 MCX 降為 σ_b · Toffoli · σ_b

    σ_b 在每個樣式位元為 0 的控制位元上放置 X 閘

    Args:
        gate: MCX 閘

    Returns:
        閘列表
    """
    if gate.kind != GateKind.MCX:
        raise ValidationError(f"只能降階 MCX 閘: {gate.kind.value}")

    sigma = [Gate.x(c) for c, b in zip(gate.controls, gate.pattern) if b == 0]
    toffoli = Gate.mcx(gate.controls, (1,) * len(gate.controls), gate.target)
    return sigma + [toffoli] + sigma


def lower_circuit(circuit: Circuit) -> Circuit:
    """降階電路中所有 MCX"""
    gates: List[Gate] = []
    for gate in circuit.gates:
        if gate.kind == GateKind.MCX:
            gates.extend(lower_mcx(gate))
        else:
            gates.append(gate)
    return Circuit(circuit.n_qubits, tuple(gates))


def qubits_for_symbols(n_symbols: int) -> int:
    """容納 N 個符號所需的量子位元數 ⌈log₂N⌉ (至少 2)"""
    return max(2, math.ceil(math.log2(n_symbols)))


def synth_word(word: TranspositionWord, n_qubits: int) -> Circuit:
    """
    依序串接每個字母的電路 (第一個字母的閘最先作用)

    Args:
        word: 轉置字，符號數須為 2^n
        n_qubits: 量子位元數

    Returns:
        Circuit
    """
    if not is_power_of_two(word.n_symbols):
        raise DomainError(f"符號數 {word.n_symbols} 不是 2 的冪次，請改用 embed_word")
    if word.n_symbols != 2 ** n_qubits:
        raise DomainError(f"符號數 {word.n_symbols} 與 2^{n_qubits} 不符")

    gates: List[Gate] = []
    for j in word.letters:
        gates.extend(synth_adjacent(j, n_qubits).gates)

    logger.debug(f"合成轉置字 {word.text()}: {len(gates)} 個閘")
    return Circuit(n_qubits, tuple(gates))


def embed_word(word: TranspositionWord) -> Circuit:
    """將任意 N 的轉置字嵌入 ⌈log₂N⌉ 個量子位元 (N 以上的基底態保持不動)"""
    n_qubits = qubits_for_symbols(word.n_symbols)
    embedded = TranspositionWord(2 ** n_qubits, word.letters)
    return synth_word(embedded, n_qubits)


def swap_gate_permutation(i: int, j: int, n_qubits: int) -> PermutationArray:
    """
    SWAP(q_i, q_j) 在基底索引上誘導的置換陣列

    交換所有 q_i != q_j 的基底態，共 2^{n-2} 組

    Args:
        i: 量子位元索引
        j: 量子位元索引 (> i)
        n_qubits: 量子位元數

    Returns:
        PermutationArray (大小 2^n)
    """
    if i == j:
        raise DomainError("SWAP 需要兩個不同的量子位元")
    i, j = min(i, j), max(i, j)
    if i < 0 or j >= n_qubits:
        raise DomainError(f"量子位元索引超出 [0, {n_qubits - 1}]")

    entries = []
    for q in range(2 ** n_qubits):
        bi, bj = q >> i & 1, q >> j & 1
        if bi != bj:
            q ^= (1 << i) | (1 << j)
        entries.append(q)
    return PermutationArray(2 ** n_qubits, tuple(entries))


def swap_circuit(i: int, j: int, n_qubits: int) -> Circuit:
    """以三個 CNOT 實作 SWAP"""
    if i == j:
        raise DomainError("SWAP 需要兩個不同的量子位元")
    return Circuit(n_qubits, (Gate.cnot(i, j), Gate.cnot(j, i), Gate.cnot(i, j)))


@dataclass(frozen=True)
class GateCountReport:
    """降階後各種閘的數量"""

    x: int
    cnot: int
    toffoli: int
    toffoli_arity: int

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "cnot": self.cnot,
            "toffoli": self.toffoli,
            "toffoli_arity": self.toffoli_arity,
        }


def gate_count_report(circuit_or_j: Union[Circuit, int], n_qubits: int = None) -> GateCountReport:
    """
    統計電路降階後的閘數

    Args:
        circuit_or_j: 電路，或相鄰轉置索引 j (此時需提供 n_qubits)
        n_qubits: 量子位元數

    Returns:
        GateCountReport
    """
    if isinstance(circuit_or_j, Circuit):
        circuit = circuit_or_j
    else:
        if n_qubits is None:
            raise ValidationError("以 j 統計時必須提供 n_qubits")
        circuit = synth_adjacent(circuit_or_j, n_qubits)

    counts = lower_circuit(circuit).counts()
    return GateCountReport(
        x=counts[GateKind.PAULI_X.value],
        cnot=counts[GateKind.CNOT.value],
        toffoli=counts[GateKind.MCX.value],
        toffoli_arity=circuit.n_qubits,
    )


def expected_gate_counts(j: int, n_qubits: int) -> GateCountReport:
    """
    依公式計算 s_j 的閘數

    偶數 j: 2k 個 X (k 為 x 的 0 位元數) 與一個 Toffoli
    奇數 j: x 為偶數時 2 個 CNOT，否則 2h 個 (h 為 x 與 x+1 的漢明距離)，
    加上降階 T_{x+1} 所需的 X 閘
    """
    x, parity = divmod(j, 2)
    width = n_qubits - 1
    if parity == 0:
        zeros = width - bin(x).count("1")
        return GateCountReport(x=2 * zeros, cnot=0, toffoli=1, toffoli_arity=n_qubits)

    h = bin(x ^ (x + 1)).count("1")
    cnot = 2 if x % 2 == 0 else 2 * h
    zeros = width - bin(x + 1).count("1")
    return GateCountReport(x=2 * zeros, cnot=cnot, toffoli=1, toffoli_arity=n_qubits)


def resource_estimate(n_symbols: int) -> Dict[str, object]:
    """
    抽樣電路的資源估計

    主暫存器需要 Σ_{k=0}^{N-2} (k+1)(k+2)/2 個相鄰轉置；
    輔助暫存器為維度 2..N 的 qudit，各以 ⌈log₂(k+2)⌉ 個量子位元編碼
    """
    if n_symbols < 2:
        raise DomainError(f"N 必須 >= 2: {n_symbols}")

    dims = [k + 2 for k in range(n_symbols - 1)]
    return {
        "n_symbols": n_symbols,
        "primary_qubits": qubits_for_symbols(n_symbols),
        "transpositions": sum((k + 1) * (k + 2) // 2 for k in range(n_symbols - 1)),
        "ancilla_dims": dims,
        "ancilla_qubits": sum(math.ceil(math.log2(d)) for d in dims),
    }
