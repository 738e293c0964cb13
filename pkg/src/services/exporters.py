"""
Circuit renderers for `export`: OpenQASM 3, a JSON structure dump and an
ASCII wire diagram laid out like the published figures (x_n on top, y_1 at
the bottom, one column per gate).
"""
import json
import logging
from enum import Enum as PyEnum

from src.circuits.models import Circuit, Wire, WireKind
from src.circuits.simulator import cost

logger = logging.getLogger(__name__)


class ExportFormat(PyEnum):
    qasm = "qasm"
    json = "json"
    ascii = "ascii"


def _qubit(circuit: Circuit, wire: Wire) -> str:
    offset = 0 if wire.kind is WireKind.input else circuit.n
    return f"q[{offset + wire.index - 1}]"


def to_qasm(circuit: Circuit) -> str:
    report = cost(circuit)
    lines = [
        "OPENQASM 3.0;",
        'include "stdgates.inc";',
        f"// wires: x1..x{circuit.n} -> q[0..{circuit.n - 1}], y1..y{circuit.m} -> q[{circuit.n}..{circuit.n + circuit.m - 1}]",
        f"// cost: N_T={report.n_toffoli} N_CN={report.n_cnot} Q={report.quantum_cost}",
        "// inverted controls are conjugated with x gates, which the cost above does not count",
        f"qubit[{circuit.n + circuit.m}] q;",
    ]
    for gate in circuit.gates:
        flips = [f"x {_qubit(circuit, c.wire)};" for c in gate.controls if c.inverted]
        operands = ", ".join(_qubit(circuit, w) for w in gate.wires())
        lines.extend(flips)
        lines.append(f"{'ccx' if gate.is_toffoli else 'cx'} {operands};")
        lines.extend(flips)
    return "\n".join(lines) + "\n"


def to_json(circuit: Circuit) -> str:
    payload = {
        "n": circuit.n,
        "m": circuit.m,
        "gates": [
            {"op": g.mnemonic, "controls": [str(c) for c in g.controls], "target": str(g.target)}
            for g in circuit.gates
        ],
        "cost": cost(circuit).model_dump(mode="json"),
    }
    return json.dumps(payload, indent=2)


def to_ascii(circuit: Circuit) -> str:
    rows = [Wire.x(i) for i in range(circuit.n, 0, -1)] + [Wire.y(j) for j in range(circuit.m, 0, -1)]
    position = {w: r for r, w in enumerate(rows)}
    cells = [[] for _ in rows]

    for gate in circuit.gates:
        marks = {position[c.wire]: ("o" if c.inverted else "*") for c in gate.controls}
        marks[position[gate.target]] = "+"
        top, bottom = min(marks), max(marks)
        for r in range(len(rows)):
            if r in marks:
                cells[r].append(f"-{marks[r]}-")
            elif top < r < bottom:
                cells[r].append("-|-")
            else:
                cells[r].append("---")

    label = max(len(str(w)) for w in rows)
    return "\n".join(f"{str(w):>{label}} -{''.join(cells[r])}-" for r, w in enumerate(rows)) + "\n"


RENDERERS = {
    ExportFormat.qasm: to_qasm,
    ExportFormat.json: to_json,
    ExportFormat.ascii: to_ascii,
}


def export(circuit: Circuit, fmt: ExportFormat) -> str:
    logger.debug("[export] %s, %d gates", fmt.value, len(circuit.gates))
    return RENDERERS[fmt](circuit)
