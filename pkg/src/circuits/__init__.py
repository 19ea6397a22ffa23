from .models import Circuit, Gate, GateKind, qubit_label_to_index
from .qasm import emit_qasm
from .synth import (
    GateCountReport,
    embed_word,
    expected_gate_counts,
    gate_count_report,
    generalized_toffoli,
    lower_circuit,
    lower_mcx,
    qubits_for_symbols,
    resource_estimate,
    swap_circuit,
    swap_gate_permutation,
    synth_adjacent,
    synth_word,
)

__all__ = [
    "Circuit",
    "Gate",
    "GateKind",
    "GateCountReport",
    "qubit_label_to_index",
    "emit_qasm",
    "embed_word",
    "expected_gate_counts",
    "gate_count_report",
    "generalized_toffoli",
    "lower_circuit",
    "lower_mcx",
    "qubits_for_symbols",
    "resource_estimate",
    "swap_circuit",
    "swap_gate_permutation",
    "synth_adjacent",
    "synth_word",
]
