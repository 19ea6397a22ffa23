"""
暫存器測量後端

|Π_k> 為無糾纏的均勻疊加，因此振幅層級模擬與直接均勻抽整數的聯合分布完全相同；
預設使用捷徑後端，振幅後端保留作為示範與測試
"""

from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np

from .register import QuditAncillaRegister, SlotMode, SlotSpec


class BaseBackend(ABC):
    """暫存器測量後端基礎類別"""

    def __init__(self, name: str):
        self.name = name

    @abstractmethod
    def measure_slot(self, slot: SlotSpec, rng) -> int:
        """
        測量單一 slot

        Returns:
            測量到的基底索引
        """
        pass

    def measure(self, register: QuditAncillaRegister, rng) -> Tuple[int, ...]:
        """依 slot 順序同時測量所有輔助 qudit"""
        return tuple(self.measure_slot(slot, rng) for slot in register.slots)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name})"


class ShortcutBackend(BaseBackend):
    """直接對每個 uniform slot 抽取均勻整數"""

    def __init__(self):
        super().__init__(name="shortcut")

    def measure_slot(self, slot: SlotSpec, rng) -> int:
        if slot.mode == SlotMode.PINNED:
            return slot.pin
        if slot.mode == SlotMode.SKIPPED:
            return 0
        return int(rng.integers(0, slot.dimension))

    def measure_batch(self, register: QuditAncillaRegister, size: int, rng) -> np.ndarray:
        """
        一次抽取 size 組聯合結果

        Returns:
            形狀 (size, N-1) 的整數陣列
        """
        columns = []
        for slot in register.slots:
            if slot.is_uniform:
                columns.append(rng.integers(0, slot.dimension, size=size))
            else:
                columns.append(np.full(size, self.measure_slot(slot, rng), dtype=np.int64))
        return np.column_stack(columns) if columns else np.zeros((size, 0), dtype=np.int64)


class AmplitudeBackend(BaseBackend):
    """逐一建立每個 qudit 的振幅向量，再做計算基底測量"""

    def __init__(self):
        super().__init__(name="amplitude")

    @staticmethod
    def slot_state(slot: SlotSpec) -> np.ndarray:
        """slot 的 qudit 狀態向量"""
        dim = slot.dimension
        if slot.is_uniform:
            return np.full(dim, 1 / np.sqrt(dim), dtype=complex)
        state = np.zeros(dim, dtype=complex)
        state[slot.pin if slot.mode == SlotMode.PINNED else 0] = 1.0
        return state

    def slot_probabilities(self, slot: SlotSpec) -> np.ndarray:
        return np.abs(self.slot_state(slot)) ** 2

    def measure_slot(self, slot: SlotSpec, rng) -> int:
        probs = self.slot_probabilities(slot)
        return int(rng.choice(probs.shape[0], p=probs / probs.sum()))
