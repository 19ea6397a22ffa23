"""
OpenQASM 3 輸出
"""

from typing import List

from src.utils.exceptions import MustLowerError

from .models import Circuit, GateKind

QASM_HEADER = 'OPENQASM 3.0;\ninclude "stdgates.inc";'


def emit_qasm(circuit: Circuit) -> str:
    """
    將電路輸出為 OpenQASM 3 文字

    含控制樣式的 MCX 必須先以 lower_circuit 降階

    Args:
        circuit: Circuit

    Returns:
        QASM 文字 (結尾含換行)
    """
    lines: List[str] = [QASM_HEADER, f"qubit[{circuit.n_qubits}] q;"]

    for gate in circuit.gates:
        if gate.kind == GateKind.PAULI_X:
            lines.append(f"x q[{gate.target}];")
        elif gate.kind == GateKind.CNOT:
            lines.append(f"cx q[{gate.controls[0]}], q[{gate.target}];")
        else:
            if not gate.is_standard_toffoli():
                pattern = "".join(str(b) for b in gate.pattern)
                raise MustLowerError(f"MCX 控制樣式 {pattern} 需先降階才能輸出 QASM")
            operands = ", ".join(f"q[{q}]" for q in gate.controls + (gate.target,))
            lines.append(f"ctrl({len(gate.controls)}) @ x {operands};")

    return "\n".join(lines) + "\n"
