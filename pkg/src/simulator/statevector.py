"""
稠密狀態向量模擬器

振幅依基底整數 q = Σ q_j 2^j 排列 (q_0 為最低位元)。
本專案所有閘皆為基底置換，因此以索引運算直接套用，不建立矩陣
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from config.settings import (
    IMPOSSIBLE_BRANCH_PROB,
    NORM_TOLERANCE,
    STATE_MAX_QUBITS,
    UNITARY_MAX_QUBITS,
)
from src.circuits.models import Circuit, Gate
from src.permutations.models import PermutationArray
from src.utils.exceptions import (
    ImpossibleBranchError,
    ResourceLimitError,
    ValidationError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StateVector:
    """n 量子位元的正規化狀態向量"""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 0 < self.n_qubits <= STATE_MAX_QUBITS:
            raise ResourceLimitError(
                f"量子位元數 {self.n_qubits} 超出模擬上限 [1, {STATE_MAX_QUBITS}]"
            )
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != 2 ** self.n_qubits:
            raise ValidationError(f"振幅數 {amps.shape[0]} 與 2^{self.n_qubits} 不符")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValidationError(f"狀態未正規化: Σ|a|² = {norm}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dimension(self) -> int:
        return 2 ** self.n_qubits

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_pairs(self) -> List[Tuple[float, float]]:
        """JSON 輸出用的 (re, im) 列表，依基底索引排序"""
        return [(float(a.real), float(a.imag)) for a in self.amplitudes]


def basis_state(n_qubits: int, index: int = 0) -> StateVector:
    """計算基底態 |index>"""
    amps = np.zeros(2 ** n_qubits, dtype=complex)
    if not 0 <= index < amps.shape[0]:
        raise ValidationError(f"基底索引 {index} 超出範圍")
    amps[index] = 1.0
    return StateVector(n_qubits, amps)


def _check_gate(gate: Gate, n_qubits: int) -> None:
    for q in gate.qubits:
        if not 0 <= q < n_qubits:
            raise ValidationError(f"閘的量子位元索引 {q} 超出 [0, {n_qubits - 1}]")


def gate_source_indices(gate: Gate, n_qubits: int) -> np.ndarray:
    """
    閘作用後每個索引的振幅來源

    控制位元全部符合樣式的基底態翻轉目標位元，其餘不變；
    翻轉為對合，所以 new[q] = old[src[q]]
    """
    _check_gate(gate, n_qubits)
    indices = np.arange(2 ** n_qubits)
    fires = np.ones(indices.shape[0], dtype=bool)
    for control, bit in zip(gate.controls, gate.effective_pattern):
        fires &= ((indices >> control) & 1) == bit
    return np.where(fires, indices ^ (1 << gate.target), indices)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """
    套用單一閘

    Args:
        state: StateVector
        gate: Gate

    Returns:
        新的 StateVector
    """
    source = gate_source_indices(gate, state.n_qubits)
    return StateVector(state.n_qubits, state.amplitudes[source])


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """依序套用電路中的所有閘"""
    if circuit.n_qubits != state.n_qubits:
        raise ValidationError(
            f"電路量子位元數 {circuit.n_qubits} 與狀態 {state.n_qubits} 不符"
        )
    amps = state.amplitudes
    for gate in circuit.gates:
        amps = amps[gate_source_indices(gate, state.n_qubits)]
    return StateVector(state.n_qubits, amps)


def permutation_action(state: StateVector, perm: PermutationArray) -> StateVector:
    """
    置換作用於振幅: 新振幅[j] = 舊振幅[π(j)]

    Args:
        state: StateVector
        perm: 大小為 2^n 的 PermutationArray

    Returns:
        新的 StateVector
    """
    if perm.n_symbols != state.dimension:
        raise ValidationError(f"置換大小 {perm.n_symbols} 與狀態維度 {state.dimension} 不符")
    return StateVector(state.n_qubits, state.amplitudes[np.asarray(perm.entries)])


def permutation_matrix(perm: PermutationArray) -> np.ndarray:
    """P[j, π(j)] = 1，使 (P ψ)[j] = ψ[π(j)]"""
    size = perm.n_symbols
    matrix = np.zeros((size, size), dtype=complex)
    matrix[np.arange(size), np.asarray(perm.entries)] = 1.0
    return matrix


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """
    以暴力方式組出電路的么正矩陣 (第 q 行為電路作用於 |q> 的結果)

    Args:
        circuit: Circuit

    Returns:
        2^n × 2^n 複數矩陣
    """
    if circuit.n_qubits > UNITARY_MAX_QUBITS:
        raise ResourceLimitError(
            f"量子位元數 {circuit.n_qubits} 超過么正矩陣上限 {UNITARY_MAX_QUBITS}"
        )

    dim = 2 ** circuit.n_qubits
    columns = [apply_circuit(basis_state(circuit.n_qubits, q), circuit).amplitudes for q in range(dim)]
    return np.column_stack(columns)


def amplitude_encode(data: Sequence[float], n_qubits: int) -> StateVector:
    """
    將非負資料寫入振幅: a_j = sqrt(data_j / Σ data)

    Args:
        data: 長度 2^n 的非負實數
        n_qubits: 量子位元數

    Returns:
        StateVector
    """
    values = np.asarray(data, dtype=float)
    if values.shape != (2 ** n_qubits,):
        raise ValidationError(f"資料長度 {values.size} 與 2^{n_qubits} 不符")
    if np.any(values < 0):
        raise ValidationError("資料不可包含負值")
    total = values.sum()
    if total <= 0:
        raise ValidationError("資料總和必須為正")
    return StateVector(n_qubits, np.sqrt(values / total))


def with_ancilla(state: StateVector) -> StateVector:
    """在最高位加入一個 |0> 輔助量子位元 (索引 n)"""
    amps = np.concatenate([state.amplitudes, np.zeros(state.dimension, dtype=complex)])
    return StateVector(state.n_qubits + 1, amps)


def _check_qubit(state: StateVector, qubit: int) -> None:
    if not 0 <= qubit < state.n_qubits:
        raise ValidationError(f"量子位元索引 {qubit} 超出 [0, {state.n_qubits - 1}]")


def exact_prob_one(state: StateVector, qubit: int) -> float:
    """測量 Z 得到 |1> 的精確機率"""
    _check_qubit(state, qubit)
    mask = ((np.arange(state.dimension) >> qubit) & 1).astype(bool)
    return float(np.sum(state.probabilities()[mask]))


def measure_z(state: StateVector, qubit: int, rng) -> Tuple[int, StateVector]:
    """
    對單一量子位元做 Z 測量並坍縮

    Args:
        state: StateVector
        qubit: 量子位元索引
        rng: numpy Generator

    Returns:
        (測量位元, 坍縮後並重新正規化的 StateVector)
    """
    p_one = exact_prob_one(state, qubit)
    bit = 1 if rng.random() < p_one else 0
    branch_prob = p_one if bit == 1 else 1.0 - p_one
    if branch_prob < IMPOSSIBLE_BRANCH_PROB:
        raise ImpossibleBranchError(f"分支機率 {branch_prob} 過小，無法坍縮")

    mask = ((np.arange(state.dimension) >> qubit) & 1) == bit
    amps = np.where(mask, state.amplitudes, 0.0) / np.sqrt(branch_prob)
    return bit, StateVector(state.n_qubits, amps)


def measure_z_counts(state: StateVector, qubit: int, shots: int, rng) -> Tuple[int, int]:
    """
    對同一狀態重複測量 shots 次 (每次重新製備)

    Returns:
        (得到 1 的次數, 得到 0 的次數)
    """
    if shots < 0:
        raise ValidationError(f"測量次數不可為負: {shots}")
    p_one = min(max(exact_prob_one(state, qubit), 0.0), 1.0)
    ones = int(rng.binomial(shots, p_one))
    return ones, shots - ones
