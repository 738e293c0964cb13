"""
Pydantic v2 models for the reversible-gate IR.

Wires are 1-based and x_1 / y_1 are the least-significant bits of the input
and output registers.  All models are frozen so circuits can be shared freely
between threads and used as dict keys.
"""
from __future__ import annotations

from enum import Enum as PyEnum
from typing import Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.core.errors import CircuitParseError


class WireKind(PyEnum):
    input = "x"
    output = "y"


class Polarity(PyEnum):
    positive = "positive"
    inverted = "inverted"


# ---------------------------------------------------------------------------
# Wires and controls
# ---------------------------------------------------------------------------

class Wire(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: WireKind
    index: int = Field(ge=1)

    def __str__(self) -> str:
        return f"{self.kind.value}{self.index}"

    @classmethod
    def x(cls, index: int) -> "Wire":
        return cls(kind=WireKind.input, index=index)

    @classmethod
    def y(cls, index: int) -> "Wire":
        return cls(kind=WireKind.output, index=index)

    @classmethod
    def parse(cls, token: str) -> "Wire":
        if len(token) < 2 or token[0] not in ("x", "y") or not (token[1:].isascii() and token[1:].isdigit()):
            raise CircuitParseError(f"bad wire token {token!r}")
        index = int(token[1:])
        if index < 1:
            raise CircuitParseError(f"wire index must be >= 1 in {token!r}")
        return cls(kind=WireKind(token[0]), index=index)

    def shifted(self, offset: int) -> "Wire":
        return Wire(kind=self.kind, index=self.index + offset)


class Control(BaseModel):
    model_config = ConfigDict(frozen=True)

    wire: Wire
    polarity: Polarity = Polarity.positive

    @property
    def inverted(self) -> bool:
        return self.polarity is Polarity.inverted

    def __str__(self) -> str:
        return f"!{self.wire}" if self.inverted else str(self.wire)

    @classmethod
    def parse(cls, token: str) -> "Control":
        if token.startswith("!"):
            return cls(wire=Wire.parse(token[1:]), polarity=Polarity.inverted)
        return cls(wire=Wire.parse(token))


# ---------------------------------------------------------------------------
# Gates and circuits
# ---------------------------------------------------------------------------

class Gate(BaseModel):
    """CNOT (one control) or Toffoli (two controls)."""

    model_config = ConfigDict(frozen=True)

    controls: tuple[Control, ...]
    target: Wire

    @field_validator("controls")
    @classmethod
    def _arity(cls, v: tuple[Control, ...]) -> tuple[Control, ...]:
        if len(v) not in (1, 2):
            raise ValueError(f"a gate takes 1 or 2 controls, got {len(v)}")
        return v

    @property
    def is_toffoli(self) -> bool:
        return len(self.controls) == 2

    @property
    def mnemonic(self) -> str:
        return "tof" if self.is_toffoli else "cnot"

    def wires(self) -> list[Wire]:
        return [c.wire for c in self.controls] + [self.target]

    def shifted(self, offset: int) -> "Gate":
        return Gate(
            controls=tuple(Control(wire=c.wire.shifted(offset), polarity=c.polarity) for c in self.controls),
            target=self.target.shifted(offset),
        )

    def __str__(self) -> str:
        return " ".join([self.mnemonic, *(str(c) for c in self.controls), str(self.target)])

    @classmethod
    def cnot(cls, control: str, target: str) -> "Gate":
        return cls(controls=(Control.parse(control),), target=Wire.parse(target))

    @classmethod
    def tof(cls, c1: str, c2: str, target: str) -> "Gate":
        return cls(controls=(Control.parse(c1), Control.parse(c2)), target=Wire.parse(target))


class Circuit(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    m: int = Field(ge=1)
    gates: tuple[Gate, ...] = ()

    def inverse(self) -> "Circuit":
        # every gate is its own inverse
        return Circuit(n=self.n, m=self.m, gates=tuple(reversed(self.gates)))

    def extended(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(n=self.n, m=self.m, gates=self.gates + tuple(gates))

    def targets_inputs(self) -> bool:
        return any(g.target.kind is WireKind.input for g in self.gates)


class CostReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_toffoli: int
    n_cnot: int
    quantum_cost: int

    @model_validator(mode="after")
    def _quantum_cost(self) -> "CostReport":
        if self.quantum_cost != self.n_cnot + 6 * self.n_toffoli:
            raise ValueError("quantum_cost must equal n_cnot + 6 * n_toffoli")
        return self

    @classmethod
    def of(cls, n_toffoli: int, n_cnot: int) -> "CostReport":
        return cls(n_toffoli=n_toffoli, n_cnot=n_cnot, quantum_cost=n_cnot + 6 * n_toffoli)

    def line(self, p: Optional[int] = None) -> str:
        head = f"p={p} " if p is not None else ""
        return f"{head}N_T={self.n_toffoli} N_CN={self.n_cnot} Q={self.quantum_cost}"


# ---------------------------------------------------------------------------
# Function tables
# ---------------------------------------------------------------------------

class FunctionTable(BaseModel):
    """values[x] is the output for input x; serialized as {"n", "m", "table"}."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    n: int = Field(ge=1)
    m: int = Field(ge=1)
    values: tuple[int, ...] = Field(alias="table")

    @model_validator(mode="after")
    def _shape(self) -> "FunctionTable":
        if len(self.values) != 1 << self.n:
            raise ValueError(f"table needs {1 << self.n} entries for n={self.n}, got {len(self.values)}")
        limit = 1 << self.m
        bad = [v for v in self.values if not 0 <= v < limit]
        if bad:
            raise ValueError(f"table values out of range for m={self.m}: {bad[:5]}")
        return self

    @classmethod
    def of(cls, n: int, m: int, values: Iterable[int]) -> "FunctionTable":
        return cls(n=n, m=m, table=tuple(values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, x: int) -> int:
        return self.values[x]
