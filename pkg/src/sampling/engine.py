"""
量測驅動的置換抽樣引擎

每個 slot k 的測量結果選出 Π_k 的一個元素 (受控 Π_k[j] 閘)，
依 slot 由小到大串接成轉置字
"""

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.permutations.core import evaluate_word
from src.permutations.models import TranspositionWord
from src.utils.exceptions import DomainError

from .backends import BaseBackend, ShortcutBackend
from .register import (
    QuditAncillaRegister,
    RestrictionSpec,
    SampleOutcome,
    SlotMode,
    SlotSpec,
)

logger = logging.getLogger(__name__)

_DEFAULT_BACKEND = ShortcutBackend()

Restriction = Union[None, RestrictionSpec, Mapping[int, SlotSpec], Iterable[SlotSpec]]


def _as_slot_map(restriction: Restriction) -> Dict[int, SlotSpec]:
    if restriction is None:
        return {}
    if isinstance(restriction, RestrictionSpec):
        restriction = restriction.slots
    if isinstance(restriction, Mapping):
        slots = dict(restriction)
    else:
        slots = {}
        for spec in restriction:
            if spec.k in slots:
                raise DomainError(f"slot {spec.k} 重複設定")
            slots[spec.k] = spec
    for k, spec in slots.items():
        if spec.k != k:
            raise DomainError(f"slot 鍵值 {k} 與設定 k={spec.k} 不符")
    return slots


def prepare_register(n_symbols: int, restriction: Restriction = None) -> QuditAncillaRegister:
    """
    建立輔助 qudit 暫存器

    預設每個 slot 皆為 |Π_k> (維度 k+2)；restriction 可將個別 slot 改為
    barred / pinned / skipped

    Args:
        n_symbols: 符號數 N
        restriction: 限制設定

    Returns:
        QuditAncillaRegister
    """
    if n_symbols < 2:
        raise DomainError(f"N 必須 >= 2: {n_symbols}")
    if isinstance(restriction, RestrictionSpec) and restriction.n_symbols != n_symbols:
        raise DomainError(f"限制設定的 N={restriction.n_symbols} 與 N={n_symbols} 不符")

    overrides = _as_slot_map(restriction)
    for k in overrides:
        if not 0 <= k <= n_symbols - 2:
            raise DomainError(f"slot {k} 超出範圍 [0, {n_symbols - 2}]")

    slots = tuple(overrides.get(k, SlotSpec(k)) for k in range(n_symbols - 1))
    register = QuditAncillaRegister(n_symbols, slots)
    logger.debug(f"暫存器維度: {register.dimensions}")
    return register


@lru_cache(maxsize=65536)
def assemble_outcome(register: QuditAncillaRegister, outcomes: Tuple[int, ...]) -> SampleOutcome:
    """依 slot 順序串接選出的 Π 元素並求值"""
    letters: List[int] = []
    for slot, index in zip(register.slots, outcomes):
        letters.extend(slot.element(index))
    word = TranspositionWord(register.n_symbols, tuple(letters))
    return SampleOutcome(outcomes=tuple(outcomes), word=word, perm=evaluate_word(word))


def measure_register(
    register: QuditAncillaRegister, rng, backend: Optional[BaseBackend] = None
) -> SampleOutcome:
    """
    同時測量所有輔助 qudit 並組出置換

    Args:
        register: QuditAncillaRegister
        rng: numpy Generator
        backend: 測量後端 (預設 ShortcutBackend)

    Returns:
        SampleOutcome
    """
    backend = backend or _DEFAULT_BACKEND
    outcomes = backend.measure(register, rng)
    return assemble_outcome(register, outcomes)


def sample_batch(register: QuditAncillaRegister, size: int, rng) -> List[SampleOutcome]:
    """一次抽取 size 個樣本"""
    rows = _DEFAULT_BACKEND.measure_batch(register, size, rng)
    return [assemble_outcome(register, tuple(int(v) for v in row)) for row in rows]


def outcome_distribution(register: QuditAncillaRegister) -> Dict[Tuple[int, ...], Fraction]:
    """
    精確的聯合分布 (以轉置字為鍵)

    Returns:
        {字母 tuple: 機率}
    """
    ranges = [range(slot.dimension) if slot.is_uniform else [None] for slot in register.slots]
    weight = Fraction(1, register.joint_outcomes())

    distribution: Dict[Tuple[int, ...], Fraction] = {}
    for choice in product(*ranges):
        outcomes = tuple(
            _fixed_index(slot) if index is None else index
            for slot, index in zip(register.slots, choice)
        )
        letters = assemble_outcome(register, outcomes).word.letters
        distribution[letters] = distribution.get(letters, Fraction(0)) + weight
    return distribution


def _fixed_index(slot: SlotSpec) -> int:
    return slot.pin if slot.mode == SlotMode.PINNED else 0


def sample_product_set(l: int, m: int, n_symbols: int, rng) -> SampleOutcome:
    """
    從 Π̄_l Π̄_m 均勻抽樣 (共 (l+1)(m+1) 個乘積)

    Args:
        l: 第一個因子索引
        m: 第二個因子索引 (l < m)
        n_symbols: 符號數 N
        rng: numpy Generator

    Returns:
        SampleOutcome
    """
    register = product_set_register(l, m, n_symbols)
    return measure_register(register, rng)


def product_set_register(l: int, m: int, n_symbols: int) -> QuditAncillaRegister:
    """sample_product_set 使用的暫存器"""
    if not 1 <= l < m <= n_symbols - 2:
        raise DomainError(f"需要 1 <= l < m <= N-2，實際 l={l}, m={m}, N={n_symbols}")

    slots = {0: SlotSpec(0, SlotMode.PINNED, pin=0)}
    for k in range(1, n_symbols - 1):
        mode = SlotMode.UNIFORM_BARRED if k in (l, m) else SlotMode.SKIPPED
        slots[k] = SlotSpec(k, mode)
    return prepare_register(n_symbols, slots)


def copy_register(
    path_pins: Sequence[Tuple[int, int]], j: int, n_symbols: int
) -> QuditAncillaRegister:
    """
    建立抽樣某個 Π̄_j 複本的暫存器

    pins 固定路徑上的 slot (slot 0 未指定時視為 I)，slot j 為 |Π̄_j>，其餘略過
    """
    if not 0 <= j <= n_symbols - 2:
        raise DomainError(f"j={j} 超出範圍 [0, {n_symbols - 2}]")

    pins: Dict[int, int] = {}
    for slot, index in path_pins:
        if slot in pins:
            raise DomainError(f"pin 路徑重複 slot {slot}")
        if not 0 <= slot < j:
            raise DomainError(f"pin slot {slot} 必須位於 [0, {j - 1}]")
        pins[slot] = index

    if j == 0:
        slots = {0: SlotSpec(0)}
    else:
        slots = {0: SlotSpec(0, SlotMode.PINNED, pin=pins.get(0, 0))}
        for k in range(1, j):
            if k in pins:
                slots[k] = SlotSpec(k, SlotMode.PINNED, pin=pins[k])
            else:
                slots[k] = SlotSpec(k, SlotMode.SKIPPED)
        slots[j] = SlotSpec(j, SlotMode.UNIFORM_BARRED)

    for k in range(j + 1, n_symbols - 1):
        slots[k] = SlotSpec(k, SlotMode.SKIPPED)
    return prepare_register(n_symbols, slots)


def sample_copy(
    path_pins: Sequence[Tuple[int, int]], j: int, n_symbols: int, rng
) -> SampleOutcome:
    """
    從 S_N^G 中附著於路徑頂點的 Π̄_j 複本抽樣，每個置換機率 1/(j+1)

    Args:
        path_pins: [(slot, Π_k 完整順序索引)]，通常由 locate 取得
        j: 複本所屬的 Π̄_j
        n_symbols: 符號數 N
        rng: numpy Generator

    Returns:
        SampleOutcome
    """
    register = copy_register(path_pins, j, n_symbols)
    return measure_register(register, rng)


def support(register: QuditAncillaRegister) -> set:
    """暫存器可能產生的置換陣列集合"""
    return {evaluate_word(TranspositionWord(register.n_symbols, w)).entries
            for w in outcome_distribution(register)}
