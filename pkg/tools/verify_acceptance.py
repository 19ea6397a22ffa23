#!/usr/bin/env python3
"""
驗收檢查腳本

以人工可讀的方式逐項重跑驗收條件 (列舉、分解、電路、抽樣、檢定、corona 圖)。

使用方式:
    python tools/verify_acceptance.py              # 執行所有檢查
    python tools/verify_acceptance.py --quick      # 只檢查置換代數
    python tools/verify_acceptance.py --circuits   # 只檢查電路
    python tools/verify_acceptance.py --sampling   # 只檢查抽樣
    python tools/verify_acceptance.py --randtest   # 只檢查隨機化檢定
    python tools/verify_acceptance.py --corona     # 只檢查 corona 圖
"""

import argparse
import logging
import math
import sys
import time
from datetime import datetime
from pathlib import Path

import numpy as np
from scipy import stats

# 將專案根目錄加入 Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config.settings import LOG_DATEFMT, LOG_FORMAT

logging.basicConfig(level=logging.WARNING, format=LOG_FORMAT, datefmt=LOG_DATEFMT)

ALPHA = 0.001


class TestResult:
    """檢查結果"""

    __test__ = False

    def __init__(self, name: str):
        self.name = name
        self.passed = False
        self.message = ""
        self.elapsed = 0.0

    def __str__(self):
        status = "✅ PASS" if self.passed else "❌ FAIL"
        return f"{status} {self.name}: {self.message} ({self.elapsed:.1f}s)"


def _run(name: str, check) -> TestResult:
    result = TestResult(name)
    start = time.perf_counter()
    try:
        result.passed, result.message = check()
    except Exception as e:
        result.message = f"例外: {e}"
    result.elapsed = time.perf_counter() - start
    return result


def check_enumeration():
    from src.permutations import enumerate_sn

    for n in range(2, 8):
        perms = {p.entries for p, _ in enumerate_sn(n)}
        if len(perms) != math.factorial(n):
            return False, f"S_{n} 只有 {len(perms)} 個相異置換"
    return True, "N=2..7 皆產生 N! 個相異置換"


def check_decomposition():
    from src.permutations import decompose, enumerate_sn, evaluate_word, inversion_count, word_length_bound

    for n in range(2, 7):
        longest = 0
        for perm, _ in enumerate_sn(n):
            word = decompose(perm)
            if evaluate_word(word) != perm or len(word) != inversion_count(perm):
                return False, f"分解失敗: {list(perm.entries)}"
            longest += len(word) == word_length_bound(n)
        if longest != 1:
            return False, f"N={n} 最大長度出現 {longest} 次"
    return True, "N<=6 分解皆可還原且長度等於反序數"


def check_circuit_equivalence():
    from src.circuits import lower_circuit, synth_adjacent, synth_word
    from src.permutations import TranspositionWord, evaluate_word
    from src.simulator import circuit_unitary, permutation_matrix

    checked = 0
    for n in (2, 3):
        for j in range(2 ** n - 1):
            circuit = synth_adjacent(j, n)
            target = permutation_matrix(evaluate_word(TranspositionWord(2 ** n, (j,))))
            for c in (circuit, lower_circuit(circuit)):
                if not np.allclose(circuit_unitary(c), target, atol=1e-12):
                    return False, f"s_{j} (n={n}) 么正矩陣不符"
                checked += 1

    rng = np.random.default_rng(2024)
    for _ in range(100):
        letters = tuple(int(v) for v in rng.integers(0, 15, size=int(rng.integers(1, 12))))
        word = TranspositionWord(16, letters)
        target = permutation_matrix(evaluate_word(word))
        if not np.allclose(circuit_unitary(synth_word(word, 4)), target, atol=1e-12):
            return False, f"n=4 隨機字 {letters} 么正矩陣不符"
        checked += 1
    return True, f"{checked} 個電路與置換矩陣一致"


def check_gate_counts():
    from src.circuits import expected_gate_counts, gate_count_report

    for n in (2, 3, 4):
        for j in range(2 ** n - 1):
            if gate_count_report(j, n) != expected_gate_counts(j, n):
                return False, f"s_{j} (n={n}) 閘數不符"
    return True, "n=2,3,4 閘數皆符合公式"


def check_uniform_sampling():
    from src.permutations import rank
    from src.sampling import prepare_register, sample_batch

    rng = np.random.default_rng(7)
    for n, draws in ((4, 120_000), (5, 600_000)):
        register = prepare_register(n)
        counts = np.zeros(math.factorial(n), dtype=np.int64)
        for outcome in sample_batch(register, draws, rng):
            counts[rank(outcome.perm)] += 1
        chi2 = stats.chisquare(counts).statistic
        critical = stats.chi2.ppf(1 - ALPHA, counts.size - 1)
        if chi2 >= critical:
            return False, f"N={n} 卡方 {chi2:.2f} >= {critical:.2f}"
    return True, "N=4,5 卡方檢定皆通過"


def check_restricted_sampling():
    from src.sampling import outcome_distribution, product_set_register, sample_batch

    register = product_set_register(1, 2, 4)
    support = set(outcome_distribution(register))
    if len(support) != 6:
        return False, f"Π̄_1Π̄_2 支撐集大小 {len(support)}"

    rng = np.random.default_rng(11)
    words = [o.word.letters for o in sample_batch(register, 60_000, rng)]
    order = sorted(support)
    counts = np.array([words.count(w) for w in order])
    chi2 = stats.chisquare(counts).statistic
    critical = stats.chi2.ppf(1 - ALPHA, len(order) - 1)
    return chi2 < critical, f"6 個乘積卡方 {chi2:.2f} (臨界值 {critical:.2f})"


def check_randtest():
    from src.randtest import (
        Dataset,
        TestConfig,
        classical_exhaustive,
        control_index_set,
        observed_statistic,
        p_value,
        run_quantum_sim,
    )

    dataset = Dataset(tuple(range(1, 9)))
    exact = run_quantum_sim(dataset, TestConfig(n=3, m=2, shots=20_000, seed=1, exact=True))
    if len(exact.classes) != 28:
        return False, f"只觀察到 {len(exact.classes)} 個類別"
    if abs(exact.classes[(3, 7)].mean_hat - 6.0) > 1e-9:
        return False, "類別 {3,7} 平均值不是 6"

    t_star = observed_statistic(dataset, control_index_set(3, 2))
    baseline = p_value(classical_exhaustive(dataset, 2), t_star)
    if exact.p_value != baseline:
        return False, f"exact p={exact.p_value} 與古典 p={baseline} 不符"

    shot = run_quantum_sim(dataset, TestConfig(n=3, m=2, shots=400_000, seed=1))
    worst = max(abs(s.p_hat - s.p_exact) for s in shot.classes.values())
    if worst > 0.02:
        return False, f"|p_hat - p| 最大 {worst:.4f}"
    if abs(shot.p_value - baseline) > 0.03:
        return False, f"shot p={shot.p_value} 偏離古典 p={baseline}"
    return True, f"p={baseline:.4f}，最大誤差 {worst:.4f}"


def check_corona():
    from src.graphs import build_sym_group_graph, degree_check, edge_count, halves_check

    for n in range(3, 7):
        graph = build_sym_group_graph(n)
        if graph.number_of_nodes() != math.factorial(n):
            return False, f"S_{n}^G 頂點數 {graph.number_of_nodes()}"
        sizes, edges = graph.graph["factor_sizes"], graph.graph["factor_edges"]
        if graph.number_of_edges() != edge_count(sizes, edges):
            return False, f"S_{n}^G 邊數 {graph.number_of_edges()} 與公式不符"
        if not degree_check(graph).passed:
            return False, f"S_{n}^G 度數公式不符"
        if n <= 5:
            halves = halves_check(graph)
            if not (halves["equal_halves"] and halves["edge_preserving"]):
                return False, f"S_{n}^G 兩半不對稱"
    return True, "N=3..6 頂點、邊、度數與對稱性皆符合"


def check_swap_arrays():
    from src.circuits import swap_circuit, swap_gate_permutation
    from src.simulator import circuit_unitary, permutation_matrix

    for n in (2, 3):
        for i in range(n):
            for j in range(i + 1, n):
                perm = swap_gate_permutation(i, j, n)
                moved = sum(1 for q, x in enumerate(perm.entries) if q != x) // 2
                if moved != 2 ** (n - 2):
                    return False, f"SWAP({i},{j}) 交換 {moved} 組"
                if not np.allclose(circuit_unitary(swap_circuit(i, j, n)), permutation_matrix(perm)):
                    return False, f"SWAP({i},{j}) 么正矩陣不符"
    return True, "n<=3 所有 SWAP 一致"


GROUPS = {
    "quick": [("列舉", check_enumeration), ("分解", check_decomposition)],
    "circuits": [
        ("電路等價", check_circuit_equivalence),
        ("閘數公式", check_gate_counts),
        ("SWAP 陣列", check_swap_arrays),
    ],
    "sampling": [("均勻抽樣", check_uniform_sampling), ("限制抽樣", check_restricted_sampling)],
    "randtest": [("隨機化檢定", check_randtest)],
    "corona": [("corona 圖", check_corona)],
}


def run_all_checks(selected=None):
    """執行檢查"""
    print("=" * 60)
    print("驗收檢查")
    print("=" * 60)
    print(f"時間: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
    print("=" * 60)

    checks = [c for group, items in GROUPS.items() if not selected or group in selected for c in items]
    results = []
    for i, (name, check) in enumerate(checks, start=1):
        print(f"\n[{i}/{len(checks)}] {name}...")
        results.append(_run(name, check))
        print(results[-1])

    passed = sum(r.passed for r in results)
    print("\n" + "=" * 60)
    print(f"結果: {passed}/{len(results)} 通過")
    print("=" * 60)
    return results


def main():
    parser = argparse.ArgumentParser(
        description="驗收檢查腳本",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    for group in GROUPS:
        parser.add_argument(f"--{group}", action="store_true", help=f"只執行 {group} 檢查")
    args = parser.parse_args()

    selected = [group for group in GROUPS if getattr(args, group)]
    results = run_all_checks(selected)
    sys.exit(0 if all(r.passed for r in results) else 1)


if __name__ == "__main__":
    main()
