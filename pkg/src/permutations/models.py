"""
置換資料模型定義
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

from src.utils.exceptions import ValidationError
from src.utils.helpers import ensure_int_sequence, word_to_text


@dataclass(frozen=True)
class PermutationArray:
    """置換的陣列表示法 [x_0, ..., x_{N-1}]，第 i 個元素代表 π(i)"""

    n_symbols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = ensure_int_sequence(self.entries, "entries")
        object.__setattr__(self, "entries", entries)

        if self.n_symbols < 1:
            raise ValidationError(f"符號數必須為正整數: {self.n_symbols}")
        if len(entries) != self.n_symbols:
            raise ValidationError(
                f"陣列長度 {len(entries)} 與符號數 {self.n_symbols} 不符"
            )
        if sorted(entries) != list(range(self.n_symbols)):
            raise ValidationError(f"不是 {{0..{self.n_symbols - 1}}} 上的雙射: {list(entries)}")

    @classmethod
    def identity(cls, n_symbols: int) -> "PermutationArray":
        return cls(n_symbols, tuple(range(n_symbols)))

    @classmethod
    def of(cls, entries) -> "PermutationArray":
        """由陣列直接建立，符號數取陣列長度"""
        entries = tuple(entries)
        return cls(len(entries), entries)

    def __getitem__(self, index: int) -> int:
        return self.entries[index]

    def __len__(self) -> int:
        return self.n_symbols

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.entries))

    def to_dict(self) -> dict:
        """轉換為字典"""
        return {"n": self.n_symbols, "perm": list(self.entries)}

    @classmethod
    def from_dict(cls, data: dict) -> "PermutationArray":
        """從字典建立實例"""
        perm = data["perm"]
        return cls(n_symbols=data.get("n", len(perm)), entries=tuple(perm))


@dataclass(frozen=True)
class TranspositionWord:
    """相鄰轉置 s_j = (j, j+1) 的有序乘積，字母 j 代表 s_j"""

    n_symbols: int
    letters: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        letters = ensure_int_sequence(self.letters, "letters")
        object.__setattr__(self, "letters", letters)

        if self.n_symbols < 1:
            raise ValidationError(f"符號數必須為正整數: {self.n_symbols}")
        for j in letters:
            if not 0 <= j <= self.n_symbols - 2:
                raise ValidationError(
                    f"字母 s_{j} 超出範圍 [0, {self.n_symbols - 2}]"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "TranspositionWord") -> "TranspositionWord":
        if other.n_symbols != self.n_symbols:
            raise ValidationError("無法串接不同符號數的轉置字")
        return TranspositionWord(self.n_symbols, self.letters + other.letters)

    def text(self) -> str:
        """"s1 s0" 文字格式"""
        return word_to_text(self.letters)

    def to_dict(self) -> dict:
        return {"n": self.n_symbols, "word": list(self.letters)}

    @classmethod
    def from_dict(cls, data: dict) -> "TranspositionWord":
        return cls(n_symbols=data["n"], letters=tuple(data["word"]))


class PiVariant(str, Enum):
    """Π_k 的兩種形式"""

    FULL = "full"  # Π_k，含單位元
    BARRED = "barred"  # Π̄_k = Π_k \ {I}


@dataclass(frozen=True)
class PiSet:
    """
    有序集合 Π_k = {I, s_k, s_k s_{k-1}, ..., s_k...s_0}

    BARRED 形式去除單位元
    """

    k: int
    variant: PiVariant = PiVariant.FULL

    def __post_init__(self):
        if self.k < 0:
            raise ValidationError(f"k 必須非負: {self.k}")
        if self.variant == PiVariant.BARRED and self.k < 1:
            raise ValidationError("Π̄_k 只定義於 k >= 1")

    def __len__(self) -> int:
        return self.k + 2 if self.variant == PiVariant.FULL else self.k + 1

    def element(self, index: int) -> Tuple[int, ...]:
        """
        取得第 index 個元素的字母 (0-based)

        Args:
            index: FULL 時 0 為 I；BARRED 時 0 為 s_k

        Returns:
            字母 tuple
        """
        if not 0 <= index < len(self):
            raise ValidationError(f"Π_{self.k} 沒有第 {index} 個元素 (大小 {len(self)})")
        length = index if self.variant == PiVariant.FULL else index + 1
        return tuple(range(self.k, self.k - length, -1))

    def elements(self) -> list:
        return [self.element(i) for i in range(len(self))]


@dataclass(frozen=True)
class RankDigits:
    """階乘表示的選擇數字 (k_1, ..., k_{N-1})，其中 0 <= k_j <= j"""

    n_symbols: int
    digits: Tuple[int, ...]

    def __post_init__(self):
        digits = ensure_int_sequence(self.digits, "digits")
        object.__setattr__(self, "digits", digits)

        if len(digits) != self.n_symbols - 1:
            raise ValidationError(
                f"數字個數 {len(digits)} 應為 N-1 = {self.n_symbols - 1}"
            )
        for j, k in enumerate(digits, start=1):
            if not 0 <= k <= j:
                raise ValidationError(f"數字 k_{j}={k} 超出範圍 [0, {j}]")

    def to_dict(self) -> dict:
        return {"n": self.n_symbols, "digits": list(self.digits)}

    @classmethod
    def from_dict(cls, data: dict) -> "RankDigits":
        return cls(n_symbols=data["n"], digits=tuple(data["digits"]))
