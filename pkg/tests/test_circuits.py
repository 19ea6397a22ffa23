import numpy as np
import pytest

from src.circuits import (
    Circuit,
    Gate,
    GateKind,
    embed_word,
    emit_qasm,
    expected_gate_counts,
    gate_count_report,
    lower_circuit,
    lower_mcx,
    qubit_label_to_index,
    resource_estimate,
    swap_circuit,
    swap_gate_permutation,
    synth_adjacent,
    synth_word,
)
from src.permutations import PermutationArray, TranspositionWord, decompose, enumerate_sn, evaluate_word
from src.simulator import circuit_unitary, permutation_matrix
from src.utils import DomainError, MustLowerError, ValidationError


def s_matrix(j, n):
    return permutation_matrix(evaluate_word(TranspositionWord(2 ** n, (j,))))


def test_even_j_is_single_mcx():
    circuit = synth_adjacent(6, 3)
    assert circuit.gates == (Gate.mcx((2, 1), (1, 1), 0),)
    assert circuit.gates[0].is_standard_toffoli()


def test_odd_j_x_even():
    # (5,6) = X_{32} T_{11} X_{32}
    circuit = synth_adjacent(5, 3)
    assert circuit.gates == (
        Gate.cnot(0, 1),
        Gate.mcx((2, 1), (1, 1), 0),
        Gate.cnot(0, 1),
    )


def test_odd_j_x_odd():
    circuit = synth_adjacent(3, 3)
    assert circuit.gates == (
        Gate.cnot(0, 2),
        Gate.cnot(0, 1),
        Gate.mcx((2, 1), (1, 0), 0),
        Gate.cnot(0, 2),
        Gate.cnot(0, 1),
    )


@pytest.mark.parametrize("j, n", [(-1, 3), (7, 3), (0, 1)])
def test_synth_adjacent_range(j, n):
    with pytest.raises(DomainError):
        synth_adjacent(j, n)


@pytest.mark.parametrize("n", [2, 3])
def test_unitary_fidelity(n):
    for j in range(2 ** n - 1):
        circuit = synth_adjacent(j, n)
        target = s_matrix(j, n)
        np.testing.assert_allclose(circuit_unitary(circuit), target, atol=1e-12)
        np.testing.assert_allclose(circuit_unitary(lower_circuit(circuit)), target, atol=1e-12)


@pytest.mark.parametrize("j", range(7))
def test_involution(j):
    circuit = synth_adjacent(j, 3)
    np.testing.assert_allclose(circuit_unitary(circuit + circuit), np.eye(8), atol=1e-12)


def test_lower_mcx_all_zero_pattern():
    gates = lower_mcx(Gate.mcx((2, 1), (0, 0), 0))
    assert gates == [Gate.x(2), Gate.x(1), Gate.mcx((2, 1), (1, 1), 0), Gate.x(2), Gate.x(1)]


def test_lower_mcx_all_ones_unchanged():
    gate = Gate.mcx((2, 1), (1, 1), 0)
    assert lower_mcx(gate) == [gate]


def test_lower_mcx_preserves_unitary_n4():
    gate = Gate.mcx((3, 2, 1), (1, 0, 1), 0)
    lowered = lower_mcx(gate)
    assert sum(g.kind == GateKind.PAULI_X for g in lowered) == 2
    np.testing.assert_allclose(
        circuit_unitary(Circuit(4, tuple(lowered))),
        circuit_unitary(Circuit(4, (gate,))),
        atol=1e-12,
    )


def test_lower_rejects_non_mcx():
    with pytest.raises(ValidationError):
        lower_mcx(Gate.x(0))


def test_synth_word_examples():
    assert len(synth_word(TranspositionWord(4, ()), 2)) == 0
    np.testing.assert_allclose(
        circuit_unitary(synth_word(TranspositionWord(4, (0,)), 2)), s_matrix(0, 2), atol=1e-12
    )
    circuit = synth_word(TranspositionWord(4, (1, 0, 2, 1, 0)), 2)
    np.testing.assert_allclose(
        circuit_unitary(circuit), permutation_matrix(PermutationArray.of([3, 2, 0, 1])), atol=1e-12
    )


def test_word_homomorphism_s4():
    for perm, _ in enumerate_sn(4):
        circuit = synth_word(decompose(perm), 2)
        np.testing.assert_allclose(circuit_unitary(circuit), permutation_matrix(perm), atol=1e-12)


def test_word_homomorphism_random_n4():
    rng = np.random.default_rng(99)
    for _ in range(100):
        letters = tuple(int(v) for v in rng.integers(0, 15, size=int(rng.integers(0, 12))))
        word = TranspositionWord(16, letters)
        np.testing.assert_allclose(
            circuit_unitary(synth_word(word, 4)), permutation_matrix(evaluate_word(word)), atol=1e-12
        )


def test_synth_word_requires_power_of_two():
    with pytest.raises(DomainError):
        synth_word(TranspositionWord(5, (0,)), 3)
    with pytest.raises(DomainError):
        synth_word(TranspositionWord(16, (0,)), 3)


def test_embed_word_general_n():
    word = TranspositionWord(5, (3, 2, 0))
    circuit = embed_word(word)
    assert circuit.n_qubits == 3
    unitary = circuit_unitary(circuit)
    expected = permutation_matrix(evaluate_word(word))
    np.testing.assert_allclose(unitary[:5, :5], expected, atol=1e-12)
    np.testing.assert_allclose(unitary[5:, 5:], np.eye(3), atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_gate_count_formulas(n):
    for j in range(2 ** n - 1):
        assert gate_count_report(j, n) == expected_gate_counts(j, n)


def test_gate_count_examples():
    report = gate_count_report(0, 3)
    assert (report.x, report.cnot, report.toffoli) == (4, 0, 1)
    assert gate_count_report(5, 3).cnot == 2
    assert gate_count_report(3, 3).cnot == 4
    with pytest.raises(ValidationError):
        gate_count_report(3)


@pytest.mark.parametrize(
    "i, j, n, expected",
    [
        (0, 1, 2, [0, 2, 1, 3]),
        (0, 2, 3, [0, 4, 2, 6, 1, 5, 3, 7]),
    ],
)
def test_swap_gate_permutation(i, j, n, expected):
    assert swap_gate_permutation(i, j, n).entries == tuple(expected)


@pytest.mark.parametrize("n", [2, 3])
def test_swap_matches_simulator(n):
    for i in range(n):
        for j in range(i + 1, n):
            perm = swap_gate_permutation(i, j, n)
            moved = sum(1 for q, x in enumerate(perm.entries) if q != x)
            assert moved // 2 == 2 ** (n - 2)
            np.testing.assert_allclose(
                circuit_unitary(swap_circuit(i, j, n)), permutation_matrix(perm), atol=1e-12
            )


def test_swap_same_qubit():
    with pytest.raises(DomainError):
        swap_gate_permutation(1, 1, 3)


def test_qasm_empty_circuit():
    assert emit_qasm(Circuit(2)) == 'OPENQASM 3.0;\ninclude "stdgates.inc";\nqubit[2] q;\n'


def test_qasm_golden_toffoli():
    text = emit_qasm(synth_adjacent(6, 3))
    assert text.splitlines()[2:] == ["qubit[3] q;", "ctrl(2) @ x q[2], q[1], q[0];"]


def test_qasm_golden_lowered_odd():
    text = emit_qasm(lower_circuit(synth_adjacent(5, 3)))
    assert text.splitlines()[3:] == [
        "cx q[0], q[1];",
        "ctrl(2) @ x q[2], q[1], q[0];",
        "cx q[0], q[1];",
    ]


def test_qasm_with_x_gates():
    text = emit_qasm(lower_circuit(synth_adjacent(0, 2)))
    assert text.splitlines()[3:] == ["x q[1];", "ctrl(1) @ x q[1], q[0];", "x q[1];"]


def test_qasm_must_lower():
    with pytest.raises(MustLowerError):
        emit_qasm(synth_adjacent(4, 3))


def test_circuit_json():
    circuit = synth_adjacent(3, 3)
    data = circuit.to_dict()
    assert data["gates"][2] == {"kind": "mcx", "controls": [2, 1], "pattern": "10", "target": 0}
    assert Circuit.from_dict(data) == circuit


def test_gate_validation():
    with pytest.raises(ValidationError):
        Gate.cnot(1, 1)
    with pytest.raises(ValidationError):
        Gate.mcx((1, 2), (1,), 0)
    with pytest.raises(ValidationError):
        Circuit(2, (Gate.x(2),))


def test_qubit_labels():
    # 最左邊的第 1 個量子位元是最高位
    assert qubit_label_to_index(1, 3) == 2
    assert qubit_label_to_index(3, 3) == 0


def test_resource_estimate():
    estimate = resource_estimate(4)
    assert estimate["transpositions"] == 10
    assert estimate["ancilla_dims"] == [2, 3, 4]
    assert estimate["ancilla_qubits"] == 5
    assert estimate["primary_qubits"] == 2
