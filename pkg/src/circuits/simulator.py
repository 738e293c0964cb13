"""
Classical simulation of CNOT/Toffoli circuits.

truth_table and flip_counts run bit-parallel: each wire is held as a 2^n-bit
integer whose bit x is that wire's value on input x, so a gate is a couple of
big-int AND/XOR operations regardless of n.
"""
import logging
from typing import Optional

from src.circuits.models import Circuit, CostReport, FunctionTable, Gate, Wire, WireKind
from src.core.config import settings
from src.core.errors import InputRangeError, InvalidCircuitError, TableTooLargeError
from src.utils.bits import column_mask

logger = logging.getLogger(__name__)


def validate(circuit: Circuit) -> list[str]:
    """Return every invariant violation; an empty list means the circuit is valid."""
    violations: list[str] = []
    for i, gate in enumerate(circuit.gates, start=1):
        for wire in gate.wires():
            limit = circuit.n if wire.kind is WireKind.input else circuit.m
            if wire.index > limit:
                violations.append(f"gate {i} ({gate}): wire {wire} out of range")
        control_wires = [c.wire for c in gate.controls]
        if gate.target in control_wires:
            violations.append(f"gate {i} ({gate}): target equals control")
        if gate.is_toffoli and control_wires[0] == control_wires[1]:
            violations.append(f"gate {i} ({gate}): duplicate Toffoli controls")
    return violations


def require_valid(circuit: Circuit) -> None:
    violations = validate(circuit)
    if violations:
        raise InvalidCircuitError(violations)


def _fires(gate: Gate, read) -> int:
    acc: Optional[int] = None
    for control in gate.controls:
        value = read(control.wire)
        if control.inverted:
            value = ~value
        acc = value if acc is None else acc & value
    return acc


def evaluate(circuit: Circuit, x: int) -> int:
    require_valid(circuit)
    if not 0 <= x < 1 << circuit.n:
        raise InputRangeError(f"input {x} outside [0, {1 << circuit.n})")

    # registers as plain ints, bit i-1 holds wire i
    regs = {WireKind.input: x, WireKind.output: 0}

    def read(wire: Wire) -> int:
        return (regs[wire.kind] >> (wire.index - 1)) & 1

    for gate in circuit.gates:
        if _fires(gate, read) & 1:
            regs[gate.target.kind] ^= 1 << (gate.target.index - 1)
    return regs[WireKind.output]


# ---------------------------------------------------------------------------
# Bit-parallel column simulation
# ---------------------------------------------------------------------------

def _columns(circuit: Circuit, record_flips: bool = False) -> tuple[dict[Wire, int], list[int]]:
    n = circuit.n
    full = (1 << (1 << n)) - 1
    cols: dict[Wire, int] = {Wire.x(i): column_mask(i, n) for i in range(1, n + 1)}
    for j in range(1, circuit.m + 1):
        cols[Wire.y(j)] = 0

    flips: list[int] = []
    for gate in circuit.gates:
        fire = _fires(gate, cols.__getitem__) & full
        cols[gate.target] ^= fire
        if record_flips:
            flips.append(fire.bit_count())
    return cols, flips


def _check_width(circuit: Circuit) -> None:
    if circuit.n + circuit.m > settings.TABLE_WIDTH_LIMIT:
        raise TableTooLargeError(
            f"n + m = {circuit.n + circuit.m} exceeds TABLE_WIDTH_LIMIT={settings.TABLE_WIDTH_LIMIT}"
        )


def output_columns(circuit: Circuit) -> list[int]:
    """Column masks for y_1..y_m."""
    require_valid(circuit)
    _check_width(circuit)
    cols, _ = _columns(circuit)
    return [cols[Wire.y(j)] for j in range(1, circuit.m + 1)]


def columns_to_values(columns: list[int], n: int) -> list[int]:
    values = [0] * (1 << n)
    for j, col in enumerate(columns):
        while col:
            low = col & -col
            values[low.bit_length() - 1] |= 1 << j
            col ^= low
    return values


def truth_table(circuit: Circuit) -> FunctionTable:
    columns = output_columns(circuit)
    return FunctionTable.of(circuit.n, circuit.m, columns_to_values(columns, circuit.n))


def flip_counts(circuit: Circuit) -> list[int]:
    """How many truth-table entries of its target column each gate changes."""
    require_valid(circuit)
    _check_width(circuit)
    _, flips = _columns(circuit, record_flips=True)
    return flips


def cost(circuit: Circuit) -> CostReport:
    n_toffoli = sum(1 for g in circuit.gates if g.is_toffoli)
    return CostReport.of(n_toffoli=n_toffoli, n_cnot=len(circuit.gates) - n_toffoli)
