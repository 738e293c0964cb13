"""
Constructive synthesis of simple periodic circuits.

Three generators cover the structured families (even lifts, 2^k + 1 and
2^k - 1).  Every other odd period up to 31 comes from the bundled database
of hand-transcribed circuits in src/data/circuits, which is checksummed
against SHA256SUMS on load.
"""
from __future__ import annotations

import hashlib
import logging
from functools import lru_cache
from pathlib import Path
from typing import TYPE_CHECKING, Optional

from src.circuits.models import Circuit, Gate
from src.circuits.simulator import truth_table, validate
from src.circuits.textformat import parse_circuit
from src.core.config import settings
from src.core.errors import (
    BundledDataError,
    InputRangeError,
    SynthesisPreconditionError,
    UnsupportedPeriodError,
)
from src.services.function_analysis import classify
from src.utils.bits import ceil_log2, is_power_of_two

if TYPE_CHECKING:
    from src.services.exact_search import SearchBudget

logger = logging.getLogger(__name__)

BUNDLED_RANGE = range(3, 32, 2)
CHECKSUM_FILE = "SHA256SUMS"

SUPPORTED_FAMILIES = (
    "p = 2, even p (lifted from p/2), odd p in [3, 31] (bundled), "
    "p = 2^k + 1, p = 2^k - 1, or any p with an explicit search budget"
)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def base_circuit() -> Circuit:
    """S_2: copy x1 into y1."""
    return Circuit(n=1, m=1, gates=(Gate.cnot("x1", "y1"),))


def synth_even(p: int, inner: Circuit) -> Circuit:
    """Lift S_{p/2} to S_p with one extra CNOT copying the low input bit."""
    if p < 4 or p % 2:
        raise SynthesisPreconditionError(f"synth_even needs even p >= 4, got {p} (S_2 is the base case)")
    violations = validate(inner)
    if violations:
        raise SynthesisPreconditionError(f"inner circuit invalid: {'; '.join(violations)}")
    report = classify(truth_table(inner))
    if not report.monoperiodic or report.fundamental_period != p // 2:
        raise SynthesisPreconditionError(
            f"inner circuit must be monoperiodic with period {p // 2}, got {report.model_dump()}"
        )

    gates = (Gate.cnot("x1", "y1"),) + tuple(g.shifted(1) for g in inner.gates)
    return Circuit(n=inner.n + 1, m=inner.m + 1, gates=gates)


def synth_pow2_plus1(k: int) -> Circuit:
    """S_{2^k + 1}: copy stage, fold x_{k+1} into y_1, then a k-gate Toffoli cascade."""
    if k < 1:
        raise InputRangeError(f"synth_pow2_plus1 needs k >= 1, got {k}")
    top = k + 1
    gates = [Gate.cnot(f"x{i}", f"y{i}") for i in range(1, k + 1)]
    gates.append(Gate.cnot(f"x{top}", "y1"))
    gates.append(Gate.tof(f"x{top}", "y1", "y2"))
    gates.extend(Gate.tof(f"!x{j}", f"y{j}", f"y{j + 1}") for j in range(2, k + 1))
    return Circuit(n=top, m=top, gates=tuple(gates))


def synth_pow2_minus1(k: int) -> Circuit:
    """S_{2^k - 1}: the cascade starts from x_k AND x_{k-1} and ends in a CNOT chain."""
    if k < 2:
        raise InputRangeError(f"synth_pow2_minus1 needs k >= 2, got {k}")
    gates = [Gate.cnot(f"x{i}", f"y{i}") for i in range(1, k - 1)]
    gates.append(Gate.tof(f"x{k}", f"x{k - 1}", "y1"))
    gates.extend(Gate.tof(f"x{j}", f"!y{j}", f"y{j + 1}") for j in range(1, k - 1))
    gates.append(Gate.cnot(f"y{k - 1}", f"y{k}"))
    gates.append(Gate.cnot(f"x{k - 1}", f"y{k - 1}"))
    gates.append(Gate.cnot(f"x{k}", f"y{k}"))
    return Circuit(n=k, m=k, gates=tuple(gates))


# ---------------------------------------------------------------------------
# Bundled database
# ---------------------------------------------------------------------------

def _read_checksums(directory: Path) -> dict[str, str]:
    manifest = directory / CHECKSUM_FILE
    if not manifest.is_file():
        raise BundledDataError(f"missing {CHECKSUM_FILE} in {directory}")
    sums: dict[str, str] = {}
    for line in manifest.read_text(encoding="ascii").splitlines():
        if not line.strip():
            continue
        digest, _, name = line.partition("  ")
        sums[name.strip()] = digest.strip()
    return sums


@lru_cache(maxsize=8)
def _load_directory(directory: str) -> dict[int, Circuit]:
    root = Path(directory)
    sums = _read_checksums(root)
    circuits: dict[int, Circuit] = {}
    for p in BUNDLED_RANGE:
        name = f"s{p:02d}.rev"
        path = root / name
        if not path.is_file():
            logger.warning("[bundled] %s missing from %s", name, root)
            continue
        raw = path.read_bytes()
        digest = hashlib.sha256(raw).hexdigest()
        if sums.get(name) != digest:
            logger.error("[bundled] checksum mismatch for %s", path)
            raise BundledDataError(f"checksum mismatch for {path}")
        circuits[p] = parse_circuit(raw.decode("ascii"))
    logger.info("[bundled] loaded %d circuits from %s", len(circuits), root)
    return circuits


def load_bundled(data_dir: Optional[Path] = None) -> dict[int, Circuit]:
    directory = Path(data_dir) if data_dir else settings.data_dir()
    return _load_directory(str(directory.resolve()))


def bundled_circuit(p: int, data_dir: Optional[Path] = None) -> Circuit:
    if p not in BUNDLED_RANGE:
        raise InputRangeError(f"bundled circuits cover odd p in [3, 31], got {p}")
    circuits = load_bundled(data_dir)
    if p not in circuits:
        raise BundledDataError(f"no bundled circuit for p={p}")
    return circuits[p]


# ---------------------------------------------------------------------------
# Dispatcher
# ---------------------------------------------------------------------------

def synth(
    p: int,
    budget: Optional["SearchBudget"] = None,
    data_dir: Optional[Path] = None,
) -> Circuit:
    if p < 2:
        raise InputRangeError(f"synth needs p >= 2, got {p}")
    if p == 2:
        return base_circuit()
    if p % 2 == 0:
        logger.debug("[synth] p=%d lifted from p=%d", p, p // 2)
        return synth_even(p, synth(p // 2, budget=budget, data_dir=data_dir))
    if p in BUNDLED_RANGE:
        return bundled_circuit(p, data_dir)
    if is_power_of_two(p - 1):
        return synth_pow2_plus1(ceil_log2(p - 1))
    if is_power_of_two(p + 1):
        return synth_pow2_minus1(ceil_log2(p + 1))
    if budget is not None:
        from src.services.exact_search import min_toffoli_synth

        logger.info("[synth] p=%d delegated to exact search", p)
        return min_toffoli_synth(p, budget=budget).require_circuit()
    raise UnsupportedPeriodError(f"no construction for p={p}; supported: {SUPPORTED_FAMILIES}")
