"""
古典窮舉基準與 p 值計算
"""

import logging
import math
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from config.settings import DEFAULT_TAIL, EXHAUSTIVE_SPLIT_CAP, PVALUE_TIE_TOLERANCE
from src.utils.exceptions import DomainError, ResourceLimitError, ValidationError

from .models import TAILS, Dataset

logger = logging.getLogger(__name__)

DataLike = Union[Dataset, Sequence[float]]


def _as_array(dataset: DataLike) -> np.ndarray:
    if isinstance(dataset, Dataset):
        return dataset.as_array()
    values = np.asarray(dataset, dtype=float)
    if values.ndim != 1 or values.size < 2:
        raise ValidationError("資料必須是至少兩個數值的一維序列")
    return values


def observed_statistic(dataset: DataLike, index_set: Iterable[int]) -> float:
    """
    指定分組的檢定統計量 T = mean(a_S) - mean(a_{S^c})

    Args:
        dataset: 資料
        index_set: 第一樣本的索引

    Returns:
        T
    """
    values = _as_array(dataset)
    indices = sorted(set(int(i) for i in index_set))
    if not indices or len(indices) >= values.size:
        raise DomainError(f"第一樣本大小必須介於 [1, {values.size - 1}]")
    if indices[0] < 0 or indices[-1] >= values.size:
        raise ValidationError(f"索引超出 [0, {values.size - 1}]")

    mask = np.zeros(values.size, dtype=bool)
    mask[indices] = True
    return float(values[mask].mean() - values[~mask].mean())


def classical_exhaustive(dataset: DataLike, K: int) -> np.ndarray:
    """
    窮舉所有 C(N,K) 種分組的 T 值

    Args:
        dataset: 資料 (N 筆)
        K: 第一樣本大小

    Returns:
        依 itertools.combinations 順序排列的 T 陣列
    """
    values = _as_array(dataset)
    N = values.size
    if not 1 <= K < N:
        raise DomainError(f"K 必須介於 [1, {N - 1}]: {K}")

    n_splits = math.comb(N, K)
    if n_splits > EXHAUSTIVE_SPLIT_CAP:
        raise ResourceLimitError(f"C({N},{K}) = {n_splits} 超過上限 {EXHAUSTIVE_SPLIT_CAP}")

    subsets = np.array(list(combinations(range(N), K)), dtype=np.int64)
    sums = values[subsets].sum(axis=1)
    total = values.sum()
    statistics = sums / K - (total - sums) / (N - K)
    logger.debug(f"[classical] C({N},{K}) = {n_splits} 種分組")
    return statistics


def p_value(
    distribution: Sequence[float],
    t_star: float,
    tail: str = DEFAULT_TAIL,
    tolerance: Optional[float] = None,
) -> float:
    """
    虛無分布下 T 至少與 t* 一樣極端的比例

    LE: P(T <= t*)；GE: P(T >= t*)；TWO_SIDED: P(|T| >= |t*|)。
    比較時允許 tolerance 的誤差 (預設 PVALUE_TIE_TOLERANCE)

    Args:
        distribution: T 的分布 (每個元素等機率)
        t_star: 觀察到的統計量
        tail: 尾端
        tolerance: 視為平手的誤差範圍

    Returns:
        p 值
    """
    values = np.asarray(distribution, dtype=float)
    if values.size == 0:
        raise DomainError("分布不可為空")
    if tail not in TAILS:
        raise DomainError(f"未知的尾端: {tail}")

    tol = PVALUE_TIE_TOLERANCE if tolerance is None else max(tolerance, PVALUE_TIE_TOLERANCE)
    if tail == "LE":
        hits = values <= t_star + tol
    elif tail == "GE":
        hits = values >= t_star - tol
    else:
        hits = np.abs(values) >= abs(t_star) - tol
    return float(np.count_nonzero(hits) / values.size)
