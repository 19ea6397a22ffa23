"""
量子模擬的雙樣本隨機化檢定流程

1. 將資料振幅編碼到 n 量子位元
2. 以抽樣引擎取得均勻隨機置換 π 並作用於振幅
3. 以低 m 位元為控制、在新的輔助量子位元上套用 Toffoli
4. 測量輔助量子位元，依類別鍵 K_π 累計結果
"""

import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Sequence, Tuple

import numpy as np

from config.settings import MIN_CLASS_SHOTS, SHOT_TIE_SIGMAS
from src.circuits.models import Gate
from src.permutations.models import PermutationArray
from src.sampling.engine import prepare_register, sample_batch
from src.simulator.statevector import (
    StateVector,
    amplitude_encode,
    apply_gate,
    exact_prob_one,
    measure_z_counts,
    permutation_action,
    with_ancilla,
)
from src.utils.exceptions import DomainError, ValidationError
from src.utils.helpers import derive_seed

from .classical import observed_statistic, p_value
from .models import ClassKey, ClassStats, Dataset, TestConfig, TestReport

logger = logging.getLogger(__name__)


def control_index_set(n: int, m: int) -> Tuple[int, ...]:
    """
    低 m 個位元全為 1 的基底索引 (共 2^{n-m} 個)

    Args:
        n: 量子位元數
        m: 控制位元數 (1 <= m < n)

    Returns:
        排序後的索引 tuple
    """
    if not 1 <= m < n:
        raise DomainError(f"m 必須介於 [1, {n - 1}]: m={m}, n={n}")
    low = (1 << m) - 1
    return tuple(range(low, 2 ** n, 1 << m))


def _check_perm(perm: PermutationArray, n: int) -> None:
    if perm.n_symbols != 2 ** n:
        raise ValidationError(f"置換大小 {perm.n_symbols} 與 2^{n} 不符")


def class_key(perm: PermutationArray, n: int, m: int) -> ClassKey:
    """K_π = sorted {π(k) : k ∈ control_index_set}"""
    _check_perm(perm, n)
    return tuple(sorted(perm[k] for k in control_index_set(n, m)))


def exact_prob(dataset: Dataset, perm: PermutationArray, m: int) -> float:
    """
    Toffoli 之後輔助量子位元為 |1> 的精確機率 Σ_{k} p_{π(k)}

    Args:
        dataset: 資料
        perm: 大小 N 的置換
        m: 控制位元數

    Returns:
        機率
    """
    _check_perm(perm, dataset.n_qubits)
    probs = dataset.probabilities()
    return float(sum(probs[perm[k]] for k in control_index_set(dataset.n_qubits, m)))


def ancilla_toffoli(n: int, m: int) -> Gate:
    """控制位元 0..m-1 (全 1)，目標為輔助量子位元 n"""
    return Gate.mcx(tuple(range(m)), (1,) * m, n)


def prepare_test_state(encoded: StateVector, perm: PermutationArray, m: int) -> StateVector:
    """置換振幅、加入輔助量子位元並套用 Toffoli"""
    n = encoded.n_qubits
    if not 1 <= m < n:
        raise DomainError(f"m 必須介於 [1, {n - 1}]: {m}")
    permuted = permutation_action(encoded, perm)
    return apply_gate(with_ancilla(permuted), ancilla_toffoli(n, m))


def _run_chunk(
    dataset: Dataset,
    encoded: StateVector,
    config: TestConfig,
    size: int,
    seed_seq: np.random.SeedSequence,
) -> Dict[ClassKey, ClassStats]:
    """處理一個 shot 區塊；同一類別的測量以一次二項分布抽樣完成"""
    rng = np.random.default_rng(seed_seq)
    register = prepare_register(dataset.size)
    samples = sample_batch(register, size, rng)

    counts: Counter = Counter()
    representative: Dict[ClassKey, PermutationArray] = {}
    for outcome in samples:
        key = class_key(outcome.perm, config.n, config.m)
        counts[key] += 1
        representative.setdefault(key, outcome.perm)

    scale = dataset.total / config.K
    tally: Dict[ClassKey, ClassStats] = {}
    for key in sorted(counts):
        state = prepare_test_state(encoded, representative[key], config.m)
        p_one = exact_prob_one(state, config.n)
        stats = ClassStats(key=key, scale=scale, p_exact=p_one, samples=counts[key], exact=config.exact)
        if not config.exact:
            stats.ones, stats.zeros = measure_z_counts(state, config.n, counts[key], rng)
        tally[key] = stats
    return tally


def run_quantum_sim(dataset: Dataset, config: TestConfig) -> TestReport:
    """
    執行量子模擬的隨機化檢定

    shots 切成固定大小的區塊，每個區塊的亂數產生器由 SeedSequence 衍生，
    合併順序固定，因此結果與 workers 數量無關

    Args:
        dataset: 資料 (2^n 筆)
        config: TestConfig

    Returns:
        TestReport
    """
    if dataset.n_qubits != config.n:
        raise ValidationError(f"資料筆數 {dataset.size} 與 2^{config.n} 不符")

    encoded = amplitude_encode(dataset.values, config.n)
    sizes = [config.chunk_size] * (config.shots // config.chunk_size)
    if config.shots % config.chunk_size:
        sizes.append(config.shots % config.chunk_size)
    root = np.random.SeedSequence(derive_seed(config.seed, "randtest"))
    children = root.spawn(len(sizes))

    logger.info(
        f"[randtest] N={dataset.size}, m={config.m}, K={config.K}, "
        f"shots={config.shots}, 區塊={len(sizes)}, exact={config.exact}"
    )

    def job(index: int) -> Dict[ClassKey, ClassStats]:
        return _run_chunk(dataset, encoded, config, sizes[index], children[index])

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            tallies = list(pool.map(job, range(len(sizes))))
    else:
        tallies = [job(i) for i in range(len(sizes))]

    report = TestReport(config=config, total=dataset.total)
    for tally in tallies:
        for key, stats in tally.items():
            if key in report.classes:
                report.classes[key].merge(stats)
            else:
                report.classes[key] = stats

    expected = math.comb(dataset.size, config.K)
    logger.info(f"[randtest] 觀察到 {len(report.classes)}/{expected} 個類別")
    if len(report.classes) < expected:
        logger.warning(f"[randtest] 尚有 {expected - len(report.classes)} 個類別未被抽到，p 值僅依已觀察類別計算")

    if not config.exact:
        report.under_sampled = [k for k in sorted(report.classes) if report.classes[k].shots < MIN_CLASS_SHOTS]
        if report.under_sampled:
            logger.warning(f"[randtest] {len(report.under_sampled)} 個類別測量次數少於 {MIN_CLASS_SHOTS}")

    if config.t_star is None:
        report.t_star = observed_statistic(dataset, control_index_set(config.n, config.m))
    else:
        report.t_star = float(config.t_star)
    report.tie_tolerance = statistic_tolerance(report)
    report.p_value = p_value(class_distribution(report), report.t_star, config.tail, report.tie_tolerance)
    logger.info(f"[randtest] t*={report.t_star:.6g}, p={report.p_value:.6g}")
    return report


def class_distribution(report: TestReport) -> np.ndarray:
    """
    每個已觀察類別的 T 值 (依類別鍵排序)

    完整觀察時等同古典窮舉的分布
    """
    return np.array([report.class_statistic(stats) for stats in report.sorted_classes()], dtype=float)


def key_preimage_sizes(perms: Sequence[PermutationArray], n: int, m: int) -> Dict[ClassKey, int]:
    """統計一組置換中每個類別鍵出現的次數"""
    return dict(Counter(class_key(p, n, m) for p in perms))


def statistic_tolerance(report: TestReport) -> float:
    """
    shot 模式下 T 估計值的平手範圍: SHOT_TIE_SIGMAS 倍的最大標準誤

    只採計測量次數達 MIN_CLASS_SHOTS 的類別；exact 模式回傳 0
    """
    if report.config.exact:
        return 0.0
    sampled = [s for s in report.classes.values() if s.shots >= MIN_CLASS_SHOTS] or list(report.classes.values())
    errors = [report.statistic_error(stats) for stats in sampled]
    return SHOT_TIE_SIGMAS * max(errors, default=0.0)
