from .statevector import (
    StateVector,
    amplitude_encode,
    apply_circuit,
    apply_gate,
    basis_state,
    circuit_unitary,
    exact_prob_one,
    gate_source_indices,
    measure_z,
    measure_z_counts,
    permutation_action,
    permutation_matrix,
    with_ancilla,
)

__all__ = [
    "StateVector",
    "amplitude_encode",
    "apply_circuit",
    "apply_gate",
    "basis_state",
    "circuit_unitary",
    "exact_prob_one",
    "gate_source_indices",
    "measure_z",
    "measure_z_counts",
    "permutation_action",
    "permutation_matrix",
    "with_ancilla",
]
