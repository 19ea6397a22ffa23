"""
輔助 qudit 暫存器與抽樣結果的資料模型
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from src.permutations.models import PermutationArray, PiSet, PiVariant, TranspositionWord
from src.utils.exceptions import DomainError, ValidationError


class SlotMode(str, Enum):
    UNIFORM_FULL = "full"  # |Π_k>，維度 k+2
    UNIFORM_BARRED = "barred"  # |Π̄_k>，維度 k+1
    PINNED = "pinned"  # 固定為基底態 |l>
    SKIPPED = "skipped"  # 不測量，選擇單位元


@dataclass(frozen=True)
class SlotSpec:
    """
    單一輔助 qudit 的設定

    PINNED 的 pin 一律以 Π_k 的完整順序編號 (0 為 I，i 為 s_k...s_{k-i+1})
    """

    k: int
    mode: SlotMode = SlotMode.UNIFORM_FULL
    pin: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "mode", SlotMode(self.mode))
        if self.k < 0:
            raise DomainError(f"slot 索引不可為負: {self.k}")
        if self.mode == SlotMode.UNIFORM_BARRED and self.k == 0:
            raise DomainError("slot 0 必須保留單位元，不能使用 Π̄_0")
        if self.mode == SlotMode.PINNED:
            if self.pin is None or not 0 <= self.pin < self.k + 2:
                raise DomainError(f"slot {self.k} 的 pin={self.pin} 超出 [0, {self.k + 1}]")
        elif self.pin is not None:
            raise DomainError(f"只有 pinned 模式可以設定 pin (slot {self.k})")

    @property
    def dimension(self) -> int:
        if self.mode == SlotMode.UNIFORM_BARRED:
            return self.k + 1
        if self.mode == SlotMode.SKIPPED:
            return 1
        return self.k + 2

    @property
    def is_uniform(self) -> bool:
        return self.mode in (SlotMode.UNIFORM_FULL, SlotMode.UNIFORM_BARRED)

    def element(self, index: int) -> Tuple[int, ...]:
        """測量結果 index 所選出的 Π 元素"""
        if self.mode == SlotMode.SKIPPED:
            return ()
        if self.mode == SlotMode.PINNED:
            return PiSet(self.k).element(self.pin)
        variant = PiVariant.BARRED if self.mode == SlotMode.UNIFORM_BARRED else PiVariant.FULL
        return PiSet(self.k, variant).element(index)

    def to_dict(self) -> dict:
        data = {"k": self.k, "mode": self.mode.value}
        if self.pin is not None:
            data["pin"] = self.pin
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "SlotSpec":
        return cls(k=data["k"], mode=SlotMode(data.get("mode", "full")), pin=data.get("pin"))


@dataclass(frozen=True)
class QuditAncillaRegister:
    """slot k 對應 Π_k，k = 0 .. N-2"""

    n_symbols: int
    slots: Tuple[SlotSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(self.slots))
        if len(self.slots) != self.n_symbols - 1:
            raise DomainError(f"需要 {self.n_symbols - 1} 個 slot，實際 {len(self.slots)} 個")
        for k, slot in enumerate(self.slots):
            if slot.k != k:
                raise DomainError(f"slot 順序錯誤: 位置 {k} 為 k={slot.k}")

    @property
    def dimensions(self) -> Tuple[int, ...]:
        return tuple(slot.dimension for slot in self.slots)

    def joint_outcomes(self) -> int:
        """所有 uniform slot 的聯合結果數"""
        total = 1
        for slot in self.slots:
            if slot.is_uniform:
                total *= slot.dimension
        return total

    def to_dict(self) -> dict:
        """RestrictionSpec JSON 格式"""
        return {"N": self.n_symbols, "slots": [slot.to_dict() for slot in self.slots]}


@dataclass(frozen=True)
class SampleOutcome:
    """一次暫存器測量的結果"""

    outcomes: Tuple[int, ...]
    word: TranspositionWord
    perm: PermutationArray

    def to_dict(self) -> dict:
        return {
            "outcomes": list(self.outcomes),
            "word": list(self.word.letters),
            "perm": list(self.perm.entries),
        }


@dataclass(frozen=True)
class RestrictionSpec:
    """限制抽樣設定 (未列出的 slot 預設為 full)"""

    n_symbols: int
    slots: Tuple[SlotSpec, ...] = field(default_factory=tuple)

    @classmethod
    def from_dict(cls, data: dict) -> "RestrictionSpec":
        try:
            n_symbols = int(data["N"])
            slots = tuple(SlotSpec.from_dict(s) for s in data.get("slots", []))
        except (KeyError, TypeError) as e:
            raise ValidationError(f"限制設定格式錯誤: {e}") from e
        return cls(n_symbols=n_symbols, slots=slots)

    def to_dict(self) -> dict:
        return {"N": self.n_symbols, "slots": [s.to_dict() for s in self.slots]}
