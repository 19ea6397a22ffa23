"""
置換代數核心模組

樹狀順序列舉、轉置字求值與分解、反序數、階乘排名與均勻抽樣
"""

import itertools
import logging
import math
import re
from typing import Iterator, List, Tuple, Union

from config.settings import ENUMERATION_MAX_N
from src.utils.exceptions import DomainError, ResourceLimitError, ValidationError

from .models import PermutationArray, PiSet, PiVariant, RankDigits, TranspositionWord

logger = logging.getLogger(__name__)

WordLike = Union[TranspositionWord, Tuple[int, ...]]


def pi_set(k: int, variant: PiVariant = PiVariant.FULL) -> PiSet:
    """建立 Π_k 或 Π̄_k"""
    return PiSet(k=k, variant=variant)


def evaluate_word(word: TranspositionWord) -> PermutationArray:
    """
    將轉置字求值為置換陣列

    從單位陣列開始，依序 (由左至右) 交換第 j 與第 j+1 個位置，
    相當於右乘 π = s_{a_1} ∘ ... ∘ s_{a_L}

    Args:
        word: 轉置字

    Returns:
        PermutationArray
    """
    entries = list(range(word.n_symbols))
    for j in word.letters:
        entries[j], entries[j + 1] = entries[j + 1], entries[j]
    return PermutationArray(word.n_symbols, tuple(entries))


def compose(left: PermutationArray, right: PermutationArray) -> PermutationArray:
    """函數合成 (left ∘ right)(i) = left(right(i))"""
    if left.n_symbols != right.n_symbols:
        raise ValidationError("無法合成不同符號數的置換")
    return PermutationArray(left.n_symbols, tuple(left[right[i]] for i in range(len(right))))


def inverse(perm: PermutationArray) -> PermutationArray:
    entries = [0] * perm.n_symbols
    for i, x in enumerate(perm.entries):
        entries[x] = i
    return PermutationArray(perm.n_symbols, tuple(entries))


def inversion_count(perm: PermutationArray) -> int:
    """反序對數量: i < j 且 π(i) > π(j)"""
    entries = perm.entries
    return sum(
        1
        for i in range(len(entries))
        for j in range(i + 1, len(entries))
        if entries[i] > entries[j]
    )


def word_length_bound(n_symbols: int) -> int:
    """規範分解的最大長度 N(N-1)/2"""
    return n_symbols * (n_symbols - 1) // 2


def longest_permutation(n_symbols: int) -> PermutationArray:
    """唯一達到最大長度的置換 (反轉)"""
    return PermutationArray(n_symbols, tuple(range(n_symbols - 1, -1, -1)))


def digits_to_word(digits: RankDigits) -> TranspositionWord:
    """
    依選擇數字組出轉置字: ∏_{j=1}^{N-1} Π_{j-1}(k_j + 1)

    Args:
        digits: RankDigits

    Returns:
        TranspositionWord
    """
    letters: List[int] = []
    for j, k in enumerate(digits.digits, start=1):
        letters.extend(PiSet(j - 1).element(k))
    return TranspositionWord(digits.n_symbols, tuple(letters))


def perm_to_digits(perm: PermutationArray) -> RankDigits:
    """
    反推每一層 Π_{α-1} 的選擇

    符號 α 在 (已移除較大符號的) 陣列中的位置為 l_α，
    對應 Π_{α-1} 的第 (α+1) - l_α 個元素，即 k_α = α - l_α
    """
    remaining = list(perm.entries)
    digits = [0] * (perm.n_symbols - 1)
    for alpha in range(perm.n_symbols - 1, 0, -1):
        position = remaining.index(alpha)
        digits[alpha - 1] = alpha - position
        remaining.pop(position)
    return RankDigits(perm.n_symbols, tuple(digits))


def decompose(perm: PermutationArray) -> TranspositionWord:
    """
    將置換分解為相鄰轉置的規範乘積 (逆向執行樹狀建構)

    Args:
        perm: PermutationArray

    Returns:
        規範轉置字，長度不超過 N(N-1)/2
    """
    return digits_to_word(perm_to_digits(perm))


def enumerate_sn(n_symbols: int) -> Iterator[Tuple[PermutationArray, TranspositionWord]]:
    """
    依樹狀順序列舉 S_N 的全部元素

    S_k = ∪_{π ∈ S_{k-1}} π Π_{k-2}，以惰性方式逐一產生

    Args:
        n_symbols: 符號數 N (>= 2)

    Yields:
        (PermutationArray, TranspositionWord)
    """
    if n_symbols < 2:
        raise DomainError(f"N 必須 >= 2: {n_symbols}")
    if n_symbols > ENUMERATION_MAX_N:
        raise ResourceLimitError(
            f"N={n_symbols} 超過窮舉上限 {ENUMERATION_MAX_N} ({math.factorial(n_symbols)} 個置換)"
        )

    logger.debug(f"列舉 S_{n_symbols}: 共 {math.factorial(n_symbols)} 個置換")
    return _enumerate(n_symbols)


def _enumerate(n_symbols: int) -> Iterator[Tuple[PermutationArray, TranspositionWord]]:
    # k_1 為最外層迴圈，對應樹的第一層
    radices = [range(j + 1) for j in range(1, n_symbols)]
    for digits in itertools.product(*radices):
        word = digits_to_word(RankDigits(n_symbols, digits))
        yield evaluate_word(word), word


def sample_digits(n_symbols: int, rng) -> RankDigits:
    """每個 k_j 從 {0..j} 均勻且獨立地抽取"""
    if n_symbols < 2:
        raise DomainError(f"N 必須 >= 2: {n_symbols}")
    digits = tuple(int(rng.integers(0, j + 1)) for j in range(1, n_symbols))
    return RankDigits(n_symbols, digits)


def sample_uniform(n_symbols: int, rng) -> Tuple[RankDigits, TranspositionWord, PermutationArray]:
    """
    以相鄰轉置乘積均勻抽樣置換

    每個置換被抽中的機率恰為 1/N!

    Args:
        n_symbols: 符號數 N
        rng: numpy Generator (或任何提供 integers(low, high) 的物件)

    Returns:
        (RankDigits, TranspositionWord, PermutationArray)
    """
    digits = sample_digits(n_symbols, rng)
    word = digits_to_word(digits)
    return digits, word, evaluate_word(word)


def rank(perm: PermutationArray) -> int:
    """置換在列舉順序中的名次 (k_1 為最高位的混合進位)"""
    value = 0
    for j, k in enumerate(perm_to_digits(perm).digits, start=1):
        value = value * (j + 1) + k
    return value


def unrank(index: int, n_symbols: int) -> PermutationArray:
    """rank 的反函數"""
    total = math.factorial(n_symbols)
    if not 0 <= index < total:
        raise ValidationError(f"名次 {index} 超出範圍 [0, {total - 1}]")

    digits = [0] * (n_symbols - 1)
    for j in range(n_symbols - 1, 0, -1):
        index, digits[j - 1] = divmod(index, j + 1)
    return evaluate_word(digits_to_word(RankDigits(n_symbols, tuple(digits))))


_CYCLE_PATTERN = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n_symbols: int) -> PermutationArray:
    """
    解析循環表示法，例如 "(0 3 1)(2)"

    Args:
        text: 循環表示字串
        n_symbols: 符號數

    Returns:
        PermutationArray
    """
    entries = list(range(n_symbols))
    seen = set()
    stripped = _CYCLE_PATTERN.sub("", text).strip()
    if stripped:
        raise ValidationError(f"無法解析的循環表示: {text}")

    for group in _CYCLE_PATTERN.findall(text):
        try:
            cycle = [int(tok) for tok in group.replace(",", " ").split()]
        except ValueError as e:
            raise ValidationError(f"循環中含有非整數符號: {group}") from e
        for x in cycle:
            if not 0 <= x < n_symbols or x in seen:
                raise ValidationError(f"循環中的符號無效或重複: {x}")
            seen.add(x)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            entries[a] = b
    return PermutationArray(n_symbols, tuple(entries))
