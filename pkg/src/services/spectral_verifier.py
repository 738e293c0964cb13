"""
Spectral check of periodicity.

Running a classical reversible oracle on a uniform input superposition and
measuring the output register leaves the input register in an equal
superposition over the preimage set of the observed y.  For a function of
period p that set is an arithmetic progression with step p, so its Fourier
spectrum concentrates near multiples of 2^n / p.
"""
from __future__ import annotations

import logging
from typing import Mapping, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.circuits.models import Circuit
from src.circuits.simulator import truth_table
from src.core.config import settings
from src.core.errors import InputRangeError
from src.utils.bits import bit_string

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-12


class RegisterState(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    width: int
    amplitudes: np.ndarray

    @model_validator(mode="after")
    def _normalized(self) -> "RegisterState":
        if self.amplitudes.shape != (1 << self.width,):
            raise ValueError(f"expected {1 << self.width} amplitudes, got shape {self.amplitudes.shape}")
        norm = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"state not normalized (sum |a|^2 = {norm})")
        return self


class Spectrum(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    width: int
    probabilities: np.ndarray

    @model_validator(mode="after")
    def _distribution(self) -> "Spectrum":
        if self.probabilities.shape != (1 << self.width,):
            raise ValueError(f"expected {1 << self.width} bins, got shape {self.probabilities.shape}")
        if np.any(self.probabilities < -NORM_TOLERANCE):
            raise ValueError("negative probability")
        total = float(np.sum(self.probabilities))
        if abs(total - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"probabilities sum to {total}")
        return self

    def to_records(self) -> list[dict]:
        return [{"k": k, "probability": float(v)} for k, v in enumerate(self.probabilities)]


class VerificationReport(BaseModel):
    period: int
    threshold: float
    masses: dict[int, float]
    passed: bool
    reason: Optional[str] = None


# ---------------------------------------------------------------------------
# Core operations
# ---------------------------------------------------------------------------

def preimage(circuit: Circuit, y: int) -> list[int]:
    return [x for x, v in enumerate(truth_table(circuit).values) if v == y]


def postselect_input_state(circuit: Circuit, y: int) -> RegisterState:
    support = preimage(circuit, y)
    if not support:
        raise InputRangeError(f"output {y} has no preimage")
    amplitudes = np.zeros(1 << circuit.n, dtype=complex)
    amplitudes[support] = 1.0 / np.sqrt(len(support))
    return RegisterState(width=circuit.n, amplitudes=amplitudes)


def dft(state: RegisterState) -> Spectrum:
    size = 1 << state.width
    k = np.arange(size)
    kernel = np.exp(2j * np.pi * np.outer(k, k) / size)
    probabilities = np.abs(kernel @ state.amplitudes) ** 2 / size
    return Spectrum(width=state.width, probabilities=probabilities)


def peak_bins(width: int, p: int) -> list[int]:
    """Bins k within half a bin of some multiple j * 2^n / p (mod 2^n)."""
    size = 1 << width
    if not 1 <= p <= size:
        raise InputRangeError(f"period {p} outside [1, {size}]")
    # |k - j*size/p| <= 1/2  <=>  2|k*p - j*size| <= p; j = p covers wraparound to size
    return [k for k in range(size) if any(2 * abs(k * p - j * size) <= p for j in range(p + 1))]


def period_peak_mass(spectrum: Spectrum, p: int) -> float:
    bins = peak_bins(spectrum.width, p)
    return float(np.sum(spectrum.probabilities[bins]))


def _output_spectra(circuit: Circuit) -> dict[int, Spectrum]:
    return {y: dft(postselect_input_state(circuit, y)) for y in sorted(set(truth_table(circuit).values))}


def _resolve_threshold(threshold: Optional[float]) -> float:
    threshold = settings.SPECTRAL_THRESHOLD if threshold is None else threshold
    if not 0 < threshold <= 1:
        raise InputRangeError(f"threshold must be in (0, 1], got {threshold}")
    return threshold


def _judge(spectra: dict[int, Spectrum], width: int, p: int, threshold: float) -> VerificationReport:
    size = 1 << width
    if not 1 <= p <= size:
        return VerificationReport(
            period=p, threshold=threshold, masses={}, passed=False,
            reason=f"period {p} outside [1, {size}] for an {width}-bit input register",
        )
    masses = {y: period_peak_mass(spectrum, p) for y, spectrum in spectra.items()}
    weakest = min(masses, key=masses.get)
    passed = masses[weakest] >= threshold
    reason = None if passed else f"y={weakest} peak mass {masses[weakest]:.6f} below threshold {threshold}"
    return VerificationReport(period=p, threshold=threshold, masses=masses, passed=passed, reason=reason)


def verify_periodicity(circuit: Circuit, p: int, threshold: Optional[float] = None) -> VerificationReport:
    threshold = _resolve_threshold(threshold)
    spectra = _output_spectra(circuit) if 1 <= p <= 1 << circuit.n else {}
    report = _judge(spectra, circuit.n, p, threshold)
    if report.masses:
        logger.info("[spectral] p=%d passed=%s min mass %.6f", p, report.passed, min(report.masses.values()))
    return report


# ---------------------------------------------------------------------------
# Wrong-period overlaps
# ---------------------------------------------------------------------------

class OverlapReport(BaseModel):
    period: int
    threshold: float
    # claims q != period in [1, 2^n] whose peak masses also clear the threshold
    passing: list[int]


def spectral_overlaps(circuit: Circuit, p: int, threshold: Optional[float] = None) -> OverlapReport:
    """Every other period claim the peak-mass check cannot tell apart from p."""
    threshold = _resolve_threshold(threshold)
    spectra = _output_spectra(circuit)
    size = 1 << circuit.n
    passing = [
        q for q in range(1, size + 1)
        if q != p and _judge(spectra, circuit.n, q, threshold).passed
    ]
    if passing:
        logger.info("[spectral] p=%d: %d other claims pass: %s", p, len(passing), passing)
    return OverlapReport(period=p, threshold=threshold, passing=passing)


def overlap_sweep(circuits: Mapping[int, Circuit], threshold: Optional[float] = None) -> dict[int, OverlapReport]:
    """spectral_overlaps for each circuit keyed by its period."""
    return {p: spectral_overlaps(circuit, p, threshold) for p, circuit in sorted(circuits.items())}


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render_bars(spectrum: Spectrum, p: Optional[int] = None, width: int = 40) -> str:
    marked = set(peak_bins(spectrum.width, p)) if p is not None else set()
    lines = []
    for k, prob in enumerate(spectrum.probabilities):
        flag = "*" if k in marked else " "
        bar = "#" * int(round(float(prob) * width))
        lines.append(f"{k:>4} {bit_string(k, spectrum.width)} {flag} {float(prob):.6f} {bar}")
    return "\n".join(lines)
