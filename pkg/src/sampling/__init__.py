from .backends import AmplitudeBackend, BaseBackend, ShortcutBackend
from .engine import (
    assemble_outcome,
    copy_register,
    measure_register,
    outcome_distribution,
    prepare_register,
    product_set_register,
    sample_batch,
    sample_copy,
    sample_product_set,
    support,
)
from .register import (
    QuditAncillaRegister,
    RestrictionSpec,
    SampleOutcome,
    SlotMode,
    SlotSpec,
)

__all__ = [
    "AmplitudeBackend",
    "BaseBackend",
    "ShortcutBackend",
    "QuditAncillaRegister",
    "RestrictionSpec",
    "SampleOutcome",
    "SlotMode",
    "SlotSpec",
    "assemble_outcome",
    "copy_register",
    "measure_register",
    "outcome_distribution",
    "prepare_register",
    "product_set_register",
    "sample_batch",
    "sample_copy",
    "sample_product_set",
    "support",
]
