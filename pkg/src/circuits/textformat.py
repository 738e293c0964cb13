"""
Circuit text format and truth-table JSON.

    # comment
    wires <n> <m>
    cnot <c> <t>
    tof <c1> <c2> <t>

Wire tokens are x<i> / y<j>; a control may carry a leading '!' (inverted).
"""
import json
import logging
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from src.circuits.models import Circuit, Control, FunctionTable, Gate, Wire, WireKind
from src.core.errors import CircuitParseError

logger = logging.getLogger(__name__)

_ARITY = {"cnot": 1, "tof": 2}


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_gate(tokens: list[str], n: int, m: int) -> Gate:
    op = tokens[0]
    if op not in _ARITY:
        raise CircuitParseError(f"unknown gate {op!r} (expected cnot or tof)")
    if len(tokens) != _ARITY[op] + 2:
        raise CircuitParseError(f"{op} takes {_ARITY[op] + 1} wires, got {len(tokens) - 1}")
    if tokens[-1].startswith("!"):
        raise CircuitParseError("target wire cannot be inverted")

    controls = tuple(Control.parse(t) for t in tokens[1:-1])
    target = Wire.parse(tokens[-1])
    gate = Gate(controls=controls, target=target)

    for wire in gate.wires():
        limit = n if wire.kind is WireKind.input else m
        if wire.index > limit:
            raise CircuitParseError(f"wire {wire} out of range for wires {n} {m}")
    control_wires = [c.wire for c in controls]
    if target in control_wires:
        raise CircuitParseError(f"target {target} equals a control")
    if len(set(control_wires)) != len(control_wires):
        raise CircuitParseError("duplicate Toffoli controls")
    return gate


def parse_circuit(text: str) -> Circuit:
    header = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        tokens = line.split()
        try:
            if header is None:
                if tokens[0] != "wires" or len(tokens) != 3:
                    raise CircuitParseError("first statement must be 'wires <n> <m>'")
                try:
                    header = (int(tokens[1]), int(tokens[2]))
                except ValueError:
                    raise CircuitParseError(f"bad widths in {line!r}")
                if header[0] < 1 or header[1] < 1:
                    raise CircuitParseError("widths must be >= 1")
                continue
            gates.append(_parse_gate(tokens, *header))
        except CircuitParseError as e:
            if e.line is None:
                raise CircuitParseError(str(e), line=lineno) from e
            raise
    if header is None:
        raise CircuitParseError("missing 'wires <n> <m>' header")
    return Circuit(n=header[0], m=header[1], gates=tuple(gates))


def render_circuit(circuit: Circuit, comment: str = "") -> str:
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines.append(f"wires {circuit.n} {circuit.m}")
    lines.extend(str(g) for g in circuit.gates)
    return "\n".join(lines) + "\n"


def load_circuit(path: Union[str, Path]) -> Circuit:
    path = Path(path)
    try:
        text = path.read_text(encoding="ascii")
    except OSError as e:
        raise CircuitParseError(f"cannot read {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise CircuitParseError(f"{path} is not ASCII") from e
    logger.debug("[textformat] loading %s", path)
    return parse_circuit(text)


def write_circuit(circuit: Circuit, path: Union[str, Path], comment: str = "") -> None:
    Path(path).write_text(render_circuit(circuit, comment), encoding="ascii")


# ---------------------------------------------------------------------------
# Truth-table JSON
# ---------------------------------------------------------------------------

def table_to_json(table: FunctionTable) -> str:
    return json.dumps(table.model_dump(mode="json", by_alias=True))


def table_from_json(text: str) -> FunctionTable:
    try:
        return FunctionTable.model_validate_json(text)
    except ValidationError as e:
        raise CircuitParseError(f"bad truth-table JSON: {e.errors()[0]['msg']}") from e
