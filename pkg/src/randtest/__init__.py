from .classical import classical_exhaustive, observed_statistic, p_value
from .models import TAILS, ClassStats, Dataset, TestConfig, TestReport
from .quantum import (
    ancilla_toffoli,
    class_distribution,
    class_key,
    control_index_set,
    exact_prob,
    key_preimage_sizes,
    prepare_test_state,
    run_quantum_sim,
    statistic_tolerance,
)

__all__ = [
    "TAILS",
    "ClassStats",
    "Dataset",
    "TestConfig",
    "TestReport",
    "ancilla_toffoli",
    "class_distribution",
    "class_key",
    "classical_exhaustive",
    "control_index_set",
    "exact_prob",
    "key_preimage_sizes",
    "observed_statistic",
    "p_value",
    "prepare_test_state",
    "run_quantum_sim",
    "statistic_tolerance",
]
