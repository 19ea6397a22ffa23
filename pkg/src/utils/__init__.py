from .exceptions import (
    DomainError,
    ImpossibleBranchError,
    MustLowerError,
    PermqError,
    ResourceLimitError,
    ValidationError,
)
from .helpers import (
    derive_seed,
    ensure_int_sequence,
    is_power_of_two,
    parse_json_arg,
    text_to_word,
    word_to_text,
)

__all__ = [
    "PermqError",
    "ValidationError",
    "DomainError",
    "ResourceLimitError",
    "MustLowerError",
    "ImpossibleBranchError",
    "derive_seed",
    "ensure_int_sequence",
    "is_power_of_two",
    "parse_json_arg",
    "text_to_word",
    "word_to_text",
]
