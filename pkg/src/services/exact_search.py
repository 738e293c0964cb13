"""
Exact minimal-Toffoli search and the conjecture scanner.

min_toffoli_synth explores gate sequences in lexicographic (N_T, gate count)
order.  A search state is the tuple of writable-wire columns, each a 2^n-bit
mask over all inputs, so two prefixes computing the same function collapse
into one entry.  Because every monoperiodic table for p is a relabeling of
every other, the goal test only checks the period and injectivity.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from enum import Enum as PyEnum
from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.circuits.models import Circuit, Control, CostReport, Gate, Polarity, Wire
from src.circuits.simulator import cost
from src.core.config import settings
from src.core.errors import BudgetExhaustedError, InputRangeError, TableTooLargeError, UnsupportedPeriodError
from src.services.function_analysis import injective_prefix
from src.utils.bits import ceil_log2, column_mask

logger = logging.getLogger(__name__)


class Certificate(PyEnum):
    found = "found"
    exhausted = "exhausted"
    budget = "budget"


class ConjectureType(PyEnum):
    A = "A"
    B = "B"


class SearchBudget(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_toffoli: int = Field(default_factory=lambda: settings.SEARCH_MAX_TOFFOLI, ge=0)
    max_gates: int = Field(default_factory=lambda: settings.SEARCH_MAX_GATES, ge=1)
    max_states: int = Field(default_factory=lambda: settings.SEARCH_MAX_STATES, ge=1)
    input_wires_read_only: bool = True
    workers: int = Field(default_factory=lambda: settings.SEARCH_WORKERS, ge=1)


class SearchOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    n: int
    certificate: Certificate
    circuit: Optional[Circuit] = None
    cost: Optional[CostReport] = None
    # strata t (Toffoli counts) proven to contain no solution
    strata_exhausted: list[int] = []
    states_explored: int = 0
    depth_reached: int = 0

    def require_circuit(self) -> Circuit:
        if self.circuit is None:
            raise BudgetExhaustedError(
                f"search for p={self.p} ended with certificate '{self.certificate.value}' "
                f"(strata exhausted: {self.strata_exhausted}, depth {self.depth_reached}, "
                f"{self.states_explored} states)",
                outcome=self,
            )
        return self.circuit

    def summary(self) -> str:
        if self.certificate is Certificate.found:
            return f"found N_T={self.cost.n_toffoli}"
        if self.certificate is Certificate.exhausted:
            return f"exhausted N_T<={max(self.strata_exhausted)}"
        return f"budget (depth {self.depth_reached})"


# ---------------------------------------------------------------------------
# Gate alphabet
# ---------------------------------------------------------------------------

# A move is (gate, target slot, ((control slot, inverted), ...)).
# Slots index into the combined column tuple: inputs first, then outputs.
_Move = tuple[Gate, int, tuple[tuple[int, bool], ...]]

_POLARITIES = ((False, False), (False, True), (True, False), (True, True))


def _alphabet(n: int, read_only: bool) -> tuple[list[_Move], list[_Move]]:
    wires = [Wire.x(i) for i in range(1, n + 1)] + [Wire.y(j) for j in range(1, n + 1)]
    targets = range(n, 2 * n) if read_only else range(2 * n)

    cnots: list[_Move] = []
    for c in range(2 * n):
        for t in targets:
            if t == c:
                continue
            gate = Gate(controls=(Control(wire=wires[c]),), target=wires[t])
            cnots.append((gate, t, ((c, False),)))

    toffolis: list[_Move] = []
    for c1 in range(2 * n):
        for c2 in range(c1 + 1, 2 * n):
            for t in targets:
                if t in (c1, c2):
                    continue
                for inv1, inv2 in _POLARITIES:
                    gate = Gate(
                        controls=(
                            Control(wire=wires[c1], polarity=Polarity.inverted if inv1 else Polarity.positive),
                            Control(wire=wires[c2], polarity=Polarity.inverted if inv2 else Polarity.positive),
                        ),
                        target=wires[t],
                    )
                    toffolis.append((gate, t, ((c1, inv1), (c2, inv2))))
    return cnots, toffolis


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

class _Space:
    """Column bookkeeping shared by the expansion workers (read-only)."""

    def __init__(self, p: int, n: int, read_only: bool):
        self.p = p
        self.n = n
        self.size = 1 << n
        self.full = (1 << self.size) - 1
        self.read_only = read_only
        self.inputs = tuple(column_mask(i, n) for i in range(1, n + 1))
        # bits x in [0, size - p): the overlap compared by the period test
        self.overlap = (1 << (self.size - p)) - 1 if p < self.size else 0

    def initial(self) -> tuple[int, ...]:
        outputs = (0,) * self.n
        return outputs if self.read_only else self.inputs + outputs

    def columns(self, state: tuple[int, ...]) -> tuple[int, ...]:
        return self.inputs + state if self.read_only else state

    def outputs(self, state: tuple[int, ...]) -> tuple[int, ...]:
        return state if self.read_only else state[self.n:]

    def apply(self, state: tuple[int, ...], move: _Move) -> Optional[tuple[int, ...]]:
        _, target, controls = move
        cols = self.columns(state)
        fire = self.full
        for slot, inverted in controls:
            fire &= ~cols[slot] if inverted else cols[slot]
        if not fire:
            return None
        slot = target - self.n if self.read_only else target
        updated = list(state)
        updated[slot] ^= fire & self.full
        return tuple(updated)

    def is_goal(self, state: tuple[int, ...]) -> bool:
        outputs = self.outputs(state)
        if self.overlap:
            for col in outputs:
                if ((col >> self.p) ^ col) & self.overlap:
                    return False
        values = [0] * self.p
        for j, col in enumerate(outputs):
            for x in range(self.p):
                if (col >> x) & 1:
                    values[x] |= 1 << j
        return injective_prefix(values, self.p)


def _expand(space: _Space, states: list[tuple[int, ...]], moves: list[_Move]) -> list[tuple[tuple[int, ...], tuple[int, ...], int]]:
    out = []
    for state in states:
        for index, move in enumerate(moves):
            child = space.apply(state, move)
            if child is not None:
                out.append((state, child, index))
    return out


def _chunks(items: list, count: int) -> list[list]:
    if count <= 1 or len(items) < 2 * count:
        return [items]
    step = -(-len(items) // count)
    return [items[i:i + step] for i in range(0, len(items), step)]


def min_toffoli_synth(p: int, n: Optional[int] = None, budget: Optional[SearchBudget] = None) -> SearchOutcome:
    if p < 2:
        raise InputRangeError(f"search needs p >= 2, got {p}")
    width = ceil_log2(p)
    if n is not None and n != width:
        raise InputRangeError(f"monoperiodic search for p={p} runs on n={width} wires, got n={n}")
    n = width
    if 2 * n > settings.TABLE_WIDTH_LIMIT:
        raise TableTooLargeError(f"search width 2n={2 * n} exceeds TABLE_WIDTH_LIMIT={settings.TABLE_WIDTH_LIMIT}")
    budget = budget or SearchBudget()

    space = _Space(p, n, budget.input_wires_read_only)
    cnots, toffolis = _alphabet(n, budget.input_wires_read_only)
    alphabet = cnots + toffolis

    start = space.initial()
    best: dict[tuple[int, ...], tuple[int, int]] = {start: (0, 0)}
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], int]] = {}
    buckets: dict[tuple[int, int], list[tuple[int, ...]]] = {(0, 0): [start]}
    capped = [False] * (budget.max_toffoli + 1)
    exhausted: list[int] = []
    depth = 0

    logger.info("[search] p=%d n=%d budget=%s", p, n, budget.model_dump())

    def rebuild(state: tuple[int, ...]) -> Circuit:
        gates: list[Gate] = []
        while state in parent:
            state, index = parent[state]
            gates.append(alphabet[index][0])
        return Circuit(n=n, m=n, gates=tuple(reversed(gates)))

    def outcome(certificate: Certificate, circuit: Optional[Circuit] = None) -> SearchOutcome:
        return SearchOutcome(
            p=p, n=n, certificate=certificate, circuit=circuit,
            cost=cost(circuit) if circuit is not None else None,
            strata_exhausted=list(exhausted), states_explored=len(best), depth_reached=depth,
        )

    with ThreadPoolExecutor(max_workers=budget.workers) as pool:
        for t in range(budget.max_toffoli + 1):
            for g in range(budget.max_gates + 1):
                key = (t, g)
                bucket = [s for s in buckets.pop(key, []) if best[s] == key]
                if not bucket:
                    continue
                depth = max(depth, g)

                for state in bucket:
                    if space.is_goal(state):
                        circuit = rebuild(state)
                        logger.info("[search] p=%d solved at N_T=%d, %d gates, %d states", p, t, g, len(best))
                        return outcome(Certificate.found, circuit)

                if g == budget.max_gates:
                    capped[t] = True
                    continue

                # successors merged in chunk order so the worker count never changes the result
                moves = cnots if t == budget.max_toffoli else alphabet
                chunks = _chunks(bucket, budget.workers)
                results = pool.map(lambda chunk: _expand(space, chunk, moves), chunks)
                for batch in results:
                    for state, child, index in batch:
                        child_key = (t + 1, g + 1) if index >= len(cnots) else (t, g + 1)
                        known = best.get(child)
                        if known is not None and known <= child_key:
                            continue
                        if known is None and len(best) >= budget.max_states:
                            logger.warning("[search] p=%d hit max_states=%d at N_T=%d depth %d", p, budget.max_states, t, g)
                            return outcome(Certificate.budget)
                        best[child] = child_key
                        parent[child] = (state, index)
                        buckets.setdefault(child_key, []).append(child)

            # a truncated stratum also starves every stratum above it
            if any(capped[: t + 1]):
                logger.warning("[search] p=%d stratum N_T=%d truncated by max_gates=%d", p, t, budget.max_gates)
                continue
            exhausted.append(t)
            logger.info("[search] p=%d stratum N_T=%d exhausted (%d states)", p, t, len(best))

    return outcome(Certificate.budget if any(capped) else Certificate.exhausted)


# ---------------------------------------------------------------------------
# Conjecture classification
# ---------------------------------------------------------------------------

class ConjectureClass(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    p: int
    n: int
    c_bits: str
    type_class: ConjectureType = Field(alias="class")
    predicted_toffoli: int


def classify_type(p: int) -> ConjectureClass:
    if p < 3 or p % 2 == 0:
        raise InputRangeError(f"type classification needs odd p >= 3, got {p}")
    binary = format(p, "b")
    c_bits = binary[:-1]
    n = len(binary)
    kind = ConjectureType.A if "01" in c_bits else ConjectureType.B
    return ConjectureClass(
        p=p, n=n, c_bits=c_bits, type_class=kind,
        predicted_toffoli=n if kind is ConjectureType.A else n - 1,
    )


class ScanRow(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    p: int
    binary: str
    n: int
    type_class: ConjectureType = Field(alias="class")
    predicted_toffoli: int
    actual: Optional[CostReport] = None
    matches: Optional[bool] = None
    certificate: Optional[str] = None
    # search_report of the certifying run
    search: Optional[dict] = None


class CensusRow(BaseModel):
    n: int
    odd_periods: int
    type_b: int
    expected_type_b: int

    @property
    def ok(self) -> bool:
        return self.type_b == self.expected_type_b


class ScanReport(BaseModel):
    max_bits: int
    rows: list[ScanRow]
    census: list[CensusRow]

    @property
    def all_match(self) -> bool:
        return all(r.matches is not False for r in self.rows) and all(c.ok for c in self.census)


def conjecture_scan(
    max_bits: int,
    with_search: bool = False,
    data_dir: Optional[Path] = None,
    budget: Optional[SearchBudget] = None,
) -> ScanReport:
    from src.services.pattern_synthesis import synth

    if max_bits < 2:
        raise InputRangeError(f"scan needs max_bits >= 2, got {max_bits}")

    rows: list[ScanRow] = []
    for p in range(3, 1 << max_bits, 2):
        info = classify_type(p)
        row = ScanRow(
            p=p, binary=format(p, "b"), n=info.n, type_class=info.type_class,
            predicted_toffoli=info.predicted_toffoli,
        )
        try:
            row.actual = cost(synth(p, data_dir=data_dir))
            row.matches = row.actual.n_toffoli == info.predicted_toffoli
            if not row.matches:
                logger.error("[scan] p=%d predicted N_T=%d, circuit has %d", p, info.predicted_toffoli, row.actual.n_toffoli)
        except UnsupportedPeriodError:
            logger.debug("[scan] p=%d has no circuit", p)

        if with_search and row.actual is not None and info.n <= settings.SEARCH_CERTIFY_MAX_BITS:
            base = budget or SearchBudget()
            lower = base.model_copy(update={"max_toffoli": row.actual.n_toffoli - 1})
            outcome = min_toffoli_synth(p, budget=lower)
            row.certificate = outcome.summary()
            row.search = search_report(outcome)
        rows.append(row)

    census: list[CensusRow] = []
    for n in range(2, max_bits + 1):
        periods = range((1 << (n - 1)) + 1, 1 << n, 2)
        type_b = sum(1 for p in periods if classify_type(p).type_class is ConjectureType.B)
        census.append(CensusRow(n=n, odd_periods=len(periods), type_b=type_b, expected_type_b=n - 1))

    return ScanReport(max_bits=max_bits, rows=rows, census=census)


def search_report(outcome: SearchOutcome) -> dict:
    """{p, class, predicted_toffoli, actual_toffoli?, certificate}."""
    report: dict = {"p": outcome.p}
    if outcome.p >= 3 and outcome.p % 2:
        info = classify_type(outcome.p)
        report["class"] = info.type_class.value
        report["predicted_toffoli"] = info.predicted_toffoli
    if outcome.cost is not None:
        report["actual_toffoli"] = outcome.cost.n_toffoli
    report["certificate"] = outcome.certificate.value
    return report


# ---------------------------------------------------------------------------
# Linear (CNOT-only) maps
# ---------------------------------------------------------------------------

class LinearScanReport(BaseModel):
    n: int
    matrices: int
    period_histogram: dict[int, int]
    monoperiodic_by_period: dict[int, int]
    odd_monoperiodic: int


def linear_period_scan(n: int) -> LinearScanReport:
    """
    Classify every y = A x over GF(2) for n x n bit matrices A.

    odd_monoperiodic is the check on the result: no linear map is monoperiodic
    with an odd period, so it is zero for every width.  A nonzero count is
    logged at error level and returned, not raised.
    """
    if not 1 <= n <= settings.LINEAR_SCAN_MAX_WIDTH:
        raise InputRangeError(f"linear scan width must be in [1, {settings.LINEAR_SCAN_MAX_WIDTH}], got {n}")

    size = 1 << n
    count = 1 << (n * n)
    # A[k, i, j] is bit i*n + j of k
    flat = (np.arange(count, dtype=np.int64)[:, None] >> np.arange(n * n)) & 1
    matrices = flat.reshape(count, n, n)
    xbits = (np.arange(size)[:, None] >> np.arange(n)) & 1
    ybits = np.einsum("kij,xj->kxi", matrices, xbits) % 2
    values = ybits @ (1 << np.arange(n))

    periods = np.full(count, size, dtype=np.int64)
    undecided = np.ones(count, dtype=bool)
    for q in range(1, size):
        fits = undecided & np.all(values[:, q:] == values[:, : size - q], axis=1)
        periods[fits] = q
        undecided &= ~fits

    histogram = {int(q): int(c) for q, c in zip(*np.unique(periods, return_counts=True))}

    mono: dict[int, int] = {}
    for k in np.nonzero(periods > size // 2)[0]:
        q = int(periods[k])
        row = values[k].tolist()
        if ceil_log2(q) == n and injective_prefix(row, q):
            mono[q] = mono.get(q, 0) + 1

    odd = sum(c for q, c in mono.items() if q % 2 and q > 1)
    if odd:
        logger.error("[linear] n=%d found %d odd-period monoperiodic linear maps", n, odd)
    logger.info("[linear] n=%d scanned %d matrices, monoperiodic by period %s", n, count, mono)
    return LinearScanReport(
        n=n, matrices=count, period_histogram=histogram,
        monoperiodic_by_period=mono, odd_monoperiodic=odd,
    )
