import json
import math
from fractions import Fraction

import numpy as np
import pytest

from src.permutations import PermutationArray, enumerate_sn
from src.randtest import (
    Dataset,
    TestConfig,
    class_distribution,
    class_key,
    classical_exhaustive,
    control_index_set,
    exact_prob,
    key_preimage_sizes,
    observed_statistic,
    p_value,
    prepare_test_state,
    run_quantum_sim,
)
from src.simulator import amplitude_encode, exact_prob_one
from src.utils import DomainError, ValidationError

EIGHT = Dataset(tuple(range(1, 9)))
FOUR = Dataset((1, 2, 3, 4))


@pytest.mark.parametrize(
    "n, m, expected",
    [(2, 1, (1, 3)), (3, 1, (1, 3, 5, 7)), (3, 2, (3, 7))],
)
def test_control_index_set(n, m, expected):
    assert control_index_set(n, m) == expected


@pytest.mark.parametrize("m", [0, 3])
def test_control_index_set_range(m):
    with pytest.raises(DomainError):
        control_index_set(3, m)


def test_class_key():
    assert class_key(PermutationArray.of([3, 2, 0, 1]), 2, 1) == (1, 2)
    assert class_key(PermutationArray.identity(8), 3, 2) == (3, 7)
    with pytest.raises(ValidationError):
        class_key(PermutationArray.identity(4), 3, 1)


def test_exact_prob_examples():
    uniform = Dataset((1,) * 8)
    assert exact_prob(uniform, PermutationArray.identity(8), 2) == pytest.approx(0.25)
    assert exact_prob(EIGHT, PermutationArray.identity(8), 2) == pytest.approx(1 / 3)


def test_sample_mean_recovery():
    # 第一樣本平均 = p · Σa / K
    p = exact_prob(EIGHT, PermutationArray.identity(8), 2)
    assert p * EIGHT.total / 2 == pytest.approx(6.0)


def test_exact_prob_matches_simulator():
    encoded = amplitude_encode(FOUR.values, 2)
    for perm, _ in enumerate_sn(4):
        state = prepare_test_state(encoded, perm, 1)
        assert exact_prob_one(state, 2) == pytest.approx(exact_prob(FOUR, perm, 1))
        key = class_key(perm, 2, 1)
        mean = exact_prob(FOUR, perm, 1) * FOUR.total / 2
        assert mean == pytest.approx(np.mean([FOUR.values[i] for i in key]))


def test_key_preimage_sizes():
    sizes = key_preimage_sizes([p for p, _ in enumerate_sn(4)], 2, 1)
    assert len(sizes) == 6
    assert set(sizes.values()) == {math.factorial(2) * math.factorial(2)}


def test_classical_exhaustive():
    dist = classical_exhaustive([1, 2, 3, 4], 2)
    np.testing.assert_allclose(dist, [-2.0, -1.0, 0.0, 0.0, 1.0, 2.0])
    np.testing.assert_allclose(classical_exhaustive([5, 5, 5, 5], 2), np.zeros(6))
    assert classical_exhaustive(EIGHT, 2).size == 28
    with pytest.raises(DomainError):
        classical_exhaustive([1, 2, 3, 4], 4)


def test_observed_statistic():
    assert observed_statistic(FOUR, (1, 3)) == pytest.approx(1.0)
    assert observed_statistic(EIGHT, control_index_set(3, 2)) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        observed_statistic(FOUR, ())


def test_p_value_examples():
    dist = classical_exhaustive([1, 2, 3, 4], 2)
    assert p_value(dist, -2.0) == pytest.approx(1 / 6)
    assert p_value(dist, dist.min()) == pytest.approx(1 / dist.size)
    assert p_value(dist, math.inf) == 1.0
    assert p_value(dist, 2.0, "GE") == pytest.approx(1 / 6)
    assert p_value(dist, 1.0, "TWO_SIDED") == pytest.approx(4 / 6)
    with pytest.raises(DomainError):
        p_value(dist, 0.0, "BOTH")
    with pytest.raises(DomainError):
        p_value([], 0.0)


def test_p_value_eight_points():
    dist = classical_exhaustive(EIGHT, 2)
    assert Fraction(p_value(dist, 2.0)).limit_denominator(100) == Fraction(24, 28)


def test_exact_mode_matches_classical():
    config = TestConfig(n=3, m=2, shots=3000, seed=7, exact=True)
    report = run_quantum_sim(EIGHT, config)
    assert len(report.classes) == 28
    assert report.classes[(3, 7)].mean_hat == pytest.approx(6.0)
    assert report.t_star == pytest.approx(2.0)
    assert report.tie_tolerance == 0.0

    classical = classical_exhaustive(EIGHT, 2)
    np.testing.assert_allclose(np.sort(class_distribution(report)), np.sort(classical), atol=1e-9)
    assert report.p_value == pytest.approx(p_value(classical, 2.0))
    assert report.p_value == pytest.approx(24 / 28)


def test_shot_mode_estimates():
    config = TestConfig(n=2, m=1, shots=60_000, seed=11)
    report = run_quantum_sim(FOUR, config)
    assert len(report.classes) == 6
    assert sum(s.shots for s in report.classes.values()) == 60_000
    for stats in report.classes.values():
        assert abs(stats.p_hat - stats.p_exact) <= 0.02
    assert report.tie_tolerance > 0
    assert not report.under_sampled
    assert report.p_value == pytest.approx(5 / 6)


def test_shot_mode_flags_under_sampled():
    report = run_quantum_sim(EIGHT, TestConfig(n=3, m=2, shots=200, seed=1))
    assert report.under_sampled
    assert sum(s.samples for s in report.classes.values()) == 200


def test_deterministic_across_workers():
    base = dict(n=2, m=1, shots=5000, seed=42, chunk_size=1000)
    single = run_quantum_sim(FOUR, TestConfig(workers=1, **base))
    pooled = run_quantum_sim(FOUR, TestConfig(workers=3, **base))
    assert single.to_dict() == pooled.to_dict()


def test_explicit_t_star_and_tail():
    config = TestConfig(n=2, m=1, shots=1000, seed=3, exact=True, t_star=-2.0, tail="GE")
    report = run_quantum_sim(FOUR, config)
    assert report.t_star == -2.0
    assert report.p_value == pytest.approx(1.0)


def test_dataset_size_mismatch():
    with pytest.raises(ValidationError):
        run_quantum_sim(FOUR, TestConfig(n=3, m=1, shots=10, seed=0))


def test_report_frame_and_json():
    report = run_quantum_sim(FOUR, TestConfig(n=2, m=1, shots=2000, seed=5, exact=True))
    frame = report.to_frame()
    assert len(frame) == 6
    assert list(frame["key"]) == sorted(report.classes)
    data = json.loads(json.dumps(report.to_dict()))
    assert data["class_count"] == 6
    assert data["K"] == 2


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=2, m=2, shots=10, seed=0),
        dict(n=2, m=1, shots=0, seed=0),
        dict(n=2, m=1, shots=10, seed=0, tail="UP"),
        dict(n=2, m=1, shots=10, seed=0, workers=0),
    ],
)
def test_config_errors(kwargs):
    with pytest.raises(DomainError):
        TestConfig(**kwargs)


@pytest.mark.parametrize("values", [(1, 2, 3), (1, -1), (0, 0), (1, float("nan"))])
def test_dataset_errors(values):
    with pytest.raises(ValidationError):
        Dataset(values)


def test_dataset_from_files(tmp_path):
    csv_path = tmp_path / "data.csv"
    csv_path.write_text("# 範例\n1\n2\n3\n4\n", encoding="utf-8")
    assert Dataset.from_file(csv_path).values == (1.0, 2.0, 3.0, 4.0)

    json_path = tmp_path / "data.json"
    json_path.write_text("[1, 2, 3, 4, 5, 6, 7, 8]", encoding="utf-8")
    dataset = Dataset.from_file(json_path)
    assert dataset.n_qubits == 3
    np.testing.assert_allclose(dataset.probabilities().sum(), 1.0)


def test_dataset_file_errors(tmp_path):
    with pytest.raises(ValidationError):
        Dataset.from_file(tmp_path / "missing.csv")

    bad_json = tmp_path / "bad.json"
    bad_json.write_text('{"a": 1}', encoding="utf-8")
    with pytest.raises(ValidationError):
        Dataset.from_file(bad_json)

    bad_csv = tmp_path / "bad.csv"
    bad_csv.write_text("1\nabc\n3\n4\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        Dataset.from_file(bad_csv)


def test_uniform_data_shot_estimates():
    report = run_quantum_sim(Dataset((3,) * 8), TestConfig(n=3, m=2, shots=20_000, seed=9))
    for stats in report.classes.values():
        assert stats.p_exact == pytest.approx(0.25)
        assert abs(stats.p_hat - 0.25) < 0.1


def test_dataset_non_numeric_json(tmp_path):
    path = tmp_path / "words.json"
    path.write_text('["a", "b", "c", "d"]', encoding="utf-8")
    with pytest.raises(ValidationError):
        Dataset.from_file(path)

    empty = tmp_path / "empty.csv"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(ValidationError):
        Dataset.from_file(empty)


@pytest.mark.slow
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_shot_mode_eight_points(seed):
    report = run_quantum_sim(EIGHT, TestConfig(n=3, m=2, shots=400_000, seed=seed))
    assert len(report.classes) == 28
    for stats in report.classes.values():
        assert abs(stats.p_hat - stats.p_exact) <= 0.02
    baseline = p_value(classical_exhaustive(EIGHT, 2), 2.0)
    assert abs(report.p_value - baseline) <= 0.03
