from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from src.permutations import rank
from src.sampling import (
    AmplitudeBackend,
    RestrictionSpec,
    ShortcutBackend,
    SlotMode,
    SlotSpec,
    assemble_outcome,
    copy_register,
    measure_register,
    outcome_distribution,
    prepare_register,
    sample_batch,
    sample_copy,
    sample_product_set,
    support,
)
from src.utils import DomainError, ValidationError


class MinimalRng:
    """integers 永遠回傳下界"""

    def integers(self, low, high, size=None):
        if size is None:
            return low
        return np.full(size, low)


def letters_of(outcome):
    return outcome.word.letters


def test_prepare_register_dimensions():
    register = prepare_register(4)
    assert register.dimensions == (2, 3, 4)
    assert register.joint_outcomes() == 24
    assert prepare_register(2).dimensions == (2,)


def test_prepare_register_restrictions():
    register = prepare_register(4, [SlotSpec(1, SlotMode.UNIFORM_BARRED)])
    assert register.dimensions == (2, 2, 4)

    with pytest.raises(DomainError):
        prepare_register(1)
    with pytest.raises(DomainError):
        prepare_register(4, [SlotSpec(3)])
    with pytest.raises(DomainError):
        prepare_register(4, [SlotSpec(1), SlotSpec(1, SlotMode.SKIPPED)])
    with pytest.raises(DomainError):
        prepare_register(4, RestrictionSpec(5))


def test_slot_spec_validation():
    with pytest.raises(DomainError):
        SlotSpec(0, SlotMode.UNIFORM_BARRED)
    with pytest.raises(DomainError):
        SlotSpec(1, SlotMode.PINNED, pin=3)
    with pytest.raises(DomainError):
        SlotSpec(1, SlotMode.UNIFORM_FULL, pin=0)


def test_restriction_spec_json():
    spec = RestrictionSpec.from_dict({"N": 4, "slots": [{"k": 2, "mode": "pinned", "pin": 3}]})
    register = prepare_register(4, spec)
    assert register.slots[2].pin == 3
    assert spec.to_dict() == {"N": 4, "slots": [{"k": 2, "mode": "pinned", "pin": 3}]}
    with pytest.raises(ValidationError):
        RestrictionSpec.from_dict({"slots": []})


def test_forced_outcomes():
    register = prepare_register(4)
    outcome = assemble_outcome(register, (1, 2, 3))
    assert outcome.word.letters == (0, 1, 0, 2, 1, 0)
    assert outcome.perm.entries == (3, 2, 1, 0)

    assert assemble_outcome(register, (0, 0, 0)).perm.is_identity()


def test_pinned_and_barred_distribution():
    register = prepare_register(
        3, [SlotSpec(0, SlotMode.PINNED, pin=1), SlotSpec(1, SlotMode.UNIFORM_BARRED)]
    )
    assert outcome_distribution(register) == {
        (0, 1): Fraction(1, 2),
        (0, 1, 0): Fraction(1, 2),
    }


def test_full_distribution_is_uniform():
    distribution = outcome_distribution(prepare_register(4))
    assert len(distribution) == 24
    assert set(distribution.values()) == {Fraction(1, 24)}
    assert len(support(prepare_register(4))) == 24


def test_sample_product_set_support():
    rng = np.random.default_rng(11)
    draws = 60_000
    counts = Counter(letters_of(sample_product_set(1, 2, 4, rng)) for _ in range(draws))
    assert set(counts) == {
        (1, 2),
        (1, 2, 1),
        (1, 2, 1, 0),
        (1, 0, 2),
        (1, 0, 2, 1),
        (1, 0, 2, 1, 0),
    }
    observed = np.array([counts[w] for w in sorted(counts)])
    assert stats.chisquare(observed).statistic < stats.chi2.ppf(0.999, 5)


def test_sample_product_set_forced_and_range():
    assert letters_of(sample_product_set(1, 2, 4, MinimalRng())) == (1, 2)
    with pytest.raises(DomainError):
        sample_product_set(2, 2, 5, MinimalRng())
    with pytest.raises(DomainError):
        sample_product_set(0, 2, 5, MinimalRng())


@pytest.mark.parametrize(
    "pins, j, n, expected",
    [
        ([(0, 1)], 2, 4, {(0, 2), (0, 2, 1), (0, 2, 1, 0)}),
        ([(0, 0)], 1, 3, {(1,), (1, 0)}),
        ([], 0, 3, {(), (0,)}),
    ],
)
def test_copy_register_support(pins, j, n, expected):
    distribution = outcome_distribution(copy_register(pins, j, n))
    assert set(distribution) == expected
    assert set(distribution.values()) == {Fraction(1, len(expected))}


def test_sample_copy_draws_from_copy(rng):
    seen = {letters_of(sample_copy([(0, 1)], 2, 4, rng)) for _ in range(200)}
    assert seen == {(0, 2), (0, 2, 1), (0, 2, 1, 0)}


def test_copy_register_errors():
    with pytest.raises(DomainError):
        copy_register([(2, 1)], 2, 4)
    with pytest.raises(DomainError):
        copy_register([(0, 1), (0, 0)], 2, 4)
    with pytest.raises(DomainError):
        copy_register([], 3, 4)


def test_backends_agree_on_slot_states():
    backend = AmplitudeBackend()
    for slot in prepare_register(5).slots:
        probs = backend.slot_probabilities(slot)
        np.testing.assert_allclose(probs, np.full(slot.dimension, 1 / slot.dimension))
    pinned = SlotSpec(2, SlotMode.PINNED, pin=3)
    assert backend.slot_probabilities(pinned)[3] == pytest.approx(1.0)
    assert ShortcutBackend().measure_slot(pinned, MinimalRng()) == 3
    assert repr(backend) == "AmplitudeBackend(name=amplitude)"


def test_amplitude_backend_is_uniform():
    rng = np.random.default_rng(3)
    register = prepare_register(3)
    draws = 30_000
    counts = Counter(
        rank(measure_register(register, rng, backend=AmplitudeBackend()).perm) for _ in range(draws)
    )
    observed = np.array([counts[r] for r in range(6)])
    assert stats.chisquare(observed).statistic < stats.chi2.ppf(0.999, 5)


def test_sample_batch_uniform_n4():
    rng = np.random.default_rng(20240602)
    outcomes = sample_batch(prepare_register(4), 48_000, rng)
    counts = Counter(rank(o.perm) for o in outcomes)
    observed = np.array([counts[r] for r in range(24)])
    assert stats.chisquare(observed).statistic < stats.chi2.ppf(0.999, 23)


def test_sample_batch_deterministic():
    register = prepare_register(5)
    first = sample_batch(register, 50, np.random.default_rng(8))
    second = sample_batch(register, 50, np.random.default_rng(8))
    assert [o.perm for o in first] == [o.perm for o in second]
    assert first[0].to_dict()["perm"] == list(first[0].perm.entries)


@pytest.mark.slow
def test_sample_batch_uniform_n5():
    rng = np.random.default_rng(7)
    counts = np.zeros(120, dtype=np.int64)
    for outcome in sample_batch(prepare_register(5), 600_000, rng):
        counts[rank(outcome.perm)] += 1
    assert counts.min() > 0
    assert stats.chisquare(counts).statistic < stats.chi2.ppf(0.999, 119)
