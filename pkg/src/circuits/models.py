"""
量子閘與電路資料模型

量子位元慣例: 基底態 |q_{n-1} ... q_1 q_0> 中 q_0 為最低位元，
內部索引 t 對應位元 q_t；電路圖由上而下以 1-based 編號，第 k 個量子位元對應內部索引 n-k
"""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Tuple

from src.utils.exceptions import ValidationError
from src.utils.helpers import ensure_int_sequence


class GateKind(str, Enum):
    PAULI_X = "x"
    CNOT = "cx"
    MCX = "mcx"


def qubit_label_to_index(label: int, n_qubits: int) -> int:
    """1-based 量子位元編號 (電路圖最上方為 1) 轉內部索引"""
    if not 1 <= label <= n_qubits:
        raise ValidationError(f"量子位元編號 {label} 超出 [1, {n_qubits}]")
    return n_qubits - label


@dataclass(frozen=True)
class Gate:
    """
    基本量子閘

    MCX 的 pattern 與 controls 逐一對應: 每個控制位元等於對應 pattern 位元時才翻轉 target，
    pattern 全為 1 即標準 Toffoli
    """

    kind: GateKind
    target: int
    controls: Tuple[int, ...] = field(default_factory=tuple)
    pattern: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        controls = ensure_int_sequence(self.controls, "controls")
        pattern = ensure_int_sequence(self.pattern, "pattern")
        object.__setattr__(self, "controls", controls)
        object.__setattr__(self, "pattern", pattern)

        expected = {GateKind.PAULI_X: 0, GateKind.CNOT: 1}
        if self.kind in expected and len(controls) != expected[self.kind]:
            raise ValidationError(f"{self.kind.value} 閘的控制位元數錯誤: {controls}")
        if self.kind == GateKind.MCX and not controls:
            raise ValidationError("MCX 至少需要一個控制位元")
        if self.kind == GateKind.CNOT and pattern not in ((), (1,)):
            raise ValidationError("CNOT 只能以 |1> 控制")
        if self.kind == GateKind.MCX and len(pattern) != len(controls):
            raise ValidationError(
                f"pattern 長度 {len(pattern)} 與控制位元數 {len(controls)} 不符"
            )
        if any(b not in (0, 1) for b in pattern):
            raise ValidationError(f"pattern 只能包含 0/1: {pattern}")
        if len(set(controls)) != len(controls):
            raise ValidationError(f"控制位元重複: {controls}")
        if self.target in controls:
            raise ValidationError(f"目標位元 {self.target} 不可同時為控制位元")

    @classmethod
    def x(cls, target: int) -> "Gate":
        return cls(GateKind.PAULI_X, target)

    @classmethod
    def cnot(cls, control: int, target: int) -> "Gate":
        return cls(GateKind.CNOT, target, (control,))

    @classmethod
    def mcx(cls, controls, pattern, target: int) -> "Gate":
        return cls(GateKind.MCX, target, tuple(controls), tuple(pattern))

    @property
    def effective_pattern(self) -> Tuple[int, ...]:
        """CNOT 的 pattern 隱含為 (1,)"""
        if self.kind == GateKind.CNOT:
            return (1,)
        return self.pattern

    @property
    def qubits(self) -> Tuple[int, ...]:
        return self.controls + (self.target,)

    def is_standard_toffoli(self) -> bool:
        return self.kind == GateKind.MCX and all(b == 1 for b in self.pattern)

    def to_dict(self) -> dict:
        """轉換為字典"""
        if self.kind == GateKind.PAULI_X:
            return {"kind": self.kind.value, "target": self.target}
        if self.kind == GateKind.CNOT:
            return {"kind": self.kind.value, "control": self.controls[0], "target": self.target}
        return {
            "kind": self.kind.value,
            "controls": list(self.controls),
            "pattern": "".join(str(b) for b in self.pattern),
            "target": self.target,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Gate":
        """從字典建立實例"""
        kind = GateKind(data["kind"])
        if kind == GateKind.PAULI_X:
            return cls.x(data["target"])
        if kind == GateKind.CNOT:
            return cls.cnot(data["control"], data["target"])
        pattern = data["pattern"]
        if isinstance(pattern, str):
            pattern = [int(ch) for ch in pattern]
        return cls.mcx(data["controls"], pattern, data["target"])


@dataclass(frozen=True)
class Circuit:
    """n 個量子位元上的有序閘列表，索引 0 最先作用"""

    n_qubits: int
    gates: Tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_qubits < 1:
            raise ValidationError(f"量子位元數必須為正: {self.n_qubits}")
        for gate in self.gates:
            for q in gate.qubits:
                if not 0 <= q < self.n_qubits:
                    raise ValidationError(f"量子位元索引 {q} 超出 [0, {self.n_qubits - 1}]")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise ValidationError("無法串接不同量子位元數的電路")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def counts(self) -> Dict[str, int]:
        """各種閘的數量"""
        counter = Counter(g.kind.value for g in self.gates)
        return {kind.value: counter.get(kind.value, 0) for kind in GateKind}

    def is_lowered(self) -> bool:
        return all(g.kind != GateKind.MCX or g.is_standard_toffoli() for g in self.gates)

    def to_dict(self) -> dict:
        return {"n": self.n_qubits, "gates": [g.to_dict() for g in self.gates]}

    @classmethod
    def from_dict(cls, data: dict) -> "Circuit":
        return cls(n_qubits=data["n"], gates=tuple(Gate.from_dict(g) for g in data["gates"]))
