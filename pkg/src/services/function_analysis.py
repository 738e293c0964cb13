"""
Period analysis of function tables.

A table is monoperiodic for p when it repeats with fundamental period p, is
one-to-one on [0, p), and n = m = ceil(log2 p).  All monoperiodic tables for
the same p are equal up to a relabeling of output values, which is what the
exact search relies on for its goal test.
"""
from __future__ import annotations

import logging
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict

from src.circuits.models import FunctionTable
from src.core.errors import InputRangeError
from src.utils.bits import ceil_log2

logger = logging.getLogger(__name__)


class PeriodReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    fundamental_period: int
    injective_within_period: bool
    monoperiodic: bool


# ---------------------------------------------------------------------------
# Sequence-level helpers (also used by exact_search on raw value lists)
# ---------------------------------------------------------------------------

def period_of_values(values: Sequence[int]) -> int:
    size = len(values)
    for p in range(1, size):
        if all(values[x] == values[x - p] for x in range(p, size)):
            return p
    # no repetition inside the domain
    return size


def injective_prefix(values: Sequence[int], p: int) -> bool:
    head = values[:p]
    return len(set(head)) == len(head)


# ---------------------------------------------------------------------------
# Table operations
# ---------------------------------------------------------------------------

def fundamental_period(table: FunctionTable) -> int:
    return period_of_values(table.values)


def is_injective_within_period(table: FunctionTable, p: int) -> bool:
    if not 1 <= p <= len(table):
        raise InputRangeError(f"period {p} outside [1, {len(table)}]")
    return injective_prefix(table.values, p)


def classify(table: FunctionTable) -> PeriodReport:
    p = fundamental_period(table)
    injective = injective_prefix(table.values, p)
    monoperiodic = injective and p >= 2 and table.n == table.m == ceil_log2(p)
    return PeriodReport(fundamental_period=p, injective_within_period=injective, monoperiodic=monoperiodic)


def relabeling(a: FunctionTable, b: FunctionTable) -> Optional[dict[int, int]]:
    """The injective map t with b[x] = t[a[x]] for every x, or None.

    t is only defined on the image of a.
    """
    if a.n != b.n or a.m != b.m:
        raise InputRangeError(f"width mismatch: ({a.n}, {a.m}) vs ({b.n}, {b.m})")
    forward: dict[int, int] = {}
    backward: dict[int, int] = {}
    for va, vb in zip(a.values, b.values):
        if forward.setdefault(va, vb) != vb or backward.setdefault(vb, va) != va:
            return None
    return forward


def equivalent_up_to_relabeling(a: FunctionTable, b: FunctionTable) -> bool:
    return relabeling(a, b) is not None


def reference_table(p: int) -> FunctionTable:
    """x mod p on n = m = ceil(log2 p) bits."""
    if p < 2:
        raise InputRangeError(f"reference table needs p >= 2, got {p}")
    n = ceil_log2(p)
    return FunctionTable.of(n, n, (x % p for x in range(1 << n)))
