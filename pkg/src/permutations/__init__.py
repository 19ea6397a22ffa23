from .models import PermutationArray, PiSet, PiVariant, RankDigits, TranspositionWord
from .core import (
    compose,
    decompose,
    digits_to_word,
    enumerate_sn,
    evaluate_word,
    inverse,
    inversion_count,
    longest_permutation,
    parse_cycles,
    perm_to_digits,
    pi_set,
    rank,
    sample_digits,
    sample_uniform,
    unrank,
    word_length_bound,
)

__all__ = [
    "PermutationArray",
    "TranspositionWord",
    "PiSet",
    "PiVariant",
    "RankDigits",
    "compose",
    "decompose",
    "digits_to_word",
    "enumerate_sn",
    "evaluate_word",
    "inverse",
    "inversion_count",
    "longest_permutation",
    "parse_cycles",
    "perm_to_digits",
    "pi_set",
    "rank",
    "sample_digits",
    "sample_uniform",
    "unrank",
    "word_length_bound",
]
