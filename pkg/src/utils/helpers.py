"""
輔助函數模組
"""

import hashlib
import json
import numbers
from typing import Any, Iterable, Optional, Sequence

from .exceptions import ValidationError


def parse_json_arg(text: Optional[str], name: str = "argument") -> Any:
    """
    解析 CLI 傳入的 JSON 字串

    Args:
        text: JSON 字串
        name: 參數名稱 (用於錯誤訊息)

    Returns:
        解析後的 Python 物件
    """
    if text is None:
        raise ValidationError(f"缺少 {name}")

    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{name} 不是合法的 JSON: {e}") from e


def derive_seed(seed: int, label: str) -> int:
    """
    以標籤雜湊從主 seed 衍生子 seed (同一 seed 與標籤永遠得到相同結果)

    Args:
        seed: 主 seed
        label: 子串流標籤

    Returns:
        64-bit 子 seed
    """
    digest = hashlib.sha256(f"{seed}:{label}".encode("utf-8")).hexdigest()
    return int(digest[:16], 16)


def word_to_text(letters: Sequence[int]) -> str:
    """將轉置字轉為 "s1 s0" 文字格式，空字為 "I" """
    if not letters:
        return "I"
    return " ".join(f"s{j}" for j in letters)


def text_to_word(text: str) -> tuple:
    """
    解析 "s1 s0" 文字格式

    Args:
        text: 文字格式的轉置字

    Returns:
        字母 tuple
    """
    text = text.strip()
    if text in ("", "I"):
        return ()

    letters = []
    for token in text.replace(",", " ").split():
        if not token.startswith("s") or not token[1:].isdigit():
            raise ValidationError(f"無法解析的轉置符號: {token}")
        letters.append(int(token[1:]))
    return tuple(letters)


def is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0


def ensure_int_sequence(values: Iterable, name: str) -> tuple:
    """確認輸入為整數序列"""
    result = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, numbers.Integral):
            raise ValidationError(f"{name} 必須只包含整數: {v!r}")
        result.append(int(v))
    return tuple(result)
