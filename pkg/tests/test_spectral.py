import numpy as np
import pytest
from pydantic import ValidationError

from src.circuits.models import Circuit, Gate
from src.core.errors import InputRangeError
from src.services.pattern_synthesis import BUNDLED_RANGE
from src.services.spectral_verifier import (
    RegisterState,
    Spectrum,
    dft,
    overlap_sweep,
    peak_bins,
    period_peak_mass,
    postselect_input_state,
    render_bars,
    spectral_overlaps,
    verify_periodicity,
)


def test_postselect_s3(s3):
    state = postselect_input_state(s3, 0)
    assert np.allclose(state.amplitudes, [1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2)])


def test_postselect_s5(bundled):
    state = postselect_input_state(bundled[5], 1)
    assert np.flatnonzero(state.amplitudes).tolist() == [1, 6]
    assert np.allclose(np.abs(state.amplitudes[[1, 6]]), 1 / np.sqrt(2))


def test_postselect_unique_preimage(bundled):
    # S9 reaches 15 only from x = 8
    state = postselect_input_state(bundled[9], 15)
    assert np.flatnonzero(state.amplitudes).tolist() == [8]
    assert abs(state.amplitudes[8]) == pytest.approx(1.0)


def test_postselect_empty_preimage(s3):
    with pytest.raises(InputRangeError):
        postselect_input_state(s3, 3)


def test_dft_of_s3_preimage(s3):
    spectrum = dft(postselect_input_state(s3, 0))
    assert np.allclose(spectrum.probabilities, [0.5, 0.25, 0.0, 0.25], atol=1e-12)


def test_dft_of_delta_is_flat():
    amplitudes = np.zeros(8, dtype=complex)
    amplitudes[0] = 1.0
    spectrum = dft(RegisterState(width=3, amplitudes=amplitudes))
    assert np.allclose(spectrum.probabilities, 1 / 8, atol=1e-12)


def test_dft_of_uniform_is_delta():
    spectrum = dft(RegisterState(width=3, amplitudes=np.full(8, 1 / np.sqrt(8), dtype=complex)))
    assert spectrum.probabilities[0] == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(spectrum.probabilities[1:], 0.0, atol=1e-12)


def test_dft_preserves_normalization(bundled):
    for circuit in bundled.values():
        spectrum = dft(postselect_input_state(circuit, 0))
        assert abs(spectrum.probabilities.sum() - 1.0) < 1e-12


def test_unnormalized_state_is_rejected():
    with pytest.raises(ValidationError):
        RegisterState(width=1, amplitudes=np.array([1.0, 1.0], dtype=complex))
    with pytest.raises(ValidationError):
        Spectrum(width=1, probabilities=np.array([0.5, 0.6]))


def test_peak_bins_and_mass(s3):
    assert peak_bins(2, 3) == [0, 1, 3]
    spectrum = dft(postselect_input_state(s3, 0))
    assert period_peak_mass(spectrum, 3) == pytest.approx(1.0)


def test_delta_spectrum_always_counts_bin_zero():
    spectrum = Spectrum(width=3, probabilities=np.eye(8)[0])
    for p in range(1, 9):
        assert period_peak_mass(spectrum, p) == pytest.approx(1.0)


def test_uniform_spectrum_at_full_period():
    spectrum = Spectrum(width=3, probabilities=np.full(8, 1 / 8))
    assert period_peak_mass(spectrum, 8) == pytest.approx(1.0)


def test_peak_mass_range():
    spectrum = Spectrum(width=2, probabilities=np.full(4, 0.25))
    with pytest.raises(InputRangeError):
        period_peak_mass(spectrum, 0)
    with pytest.raises(InputRangeError):
        period_peak_mass(spectrum, 5)


def test_exact_divisor_spectrum():
    # y1 = x1 on three input bits: preimage of 0 is {0, 2, 4, 6}
    circuit = Circuit(n=3, m=1, gates=(Gate.cnot("x1", "y1"),))
    spectrum = dft(postselect_input_state(circuit, 0))
    assert np.flatnonzero(spectrum.probabilities > 1e-12).tolist() == [0, 4]
    assert np.allclose(spectrum.probabilities[[0, 4]], 0.5)


def test_shift_invariance_between_equal_preimages(bundled):
    # S9 outputs 0 and 3 both have two preimages, nine apart
    a = dft(postselect_input_state(bundled[9], 0))
    b = dft(postselect_input_state(bundled[9], 3))
    assert np.allclose(a.probabilities, b.probabilities, atol=1e-12)


def test_s3_passes_its_own_period(s3):
    report = verify_periodicity(s3, 3, 0.405)
    assert report.passed
    assert report.masses[0] == pytest.approx(1.0)
    assert report.masses[1] == pytest.approx(0.75)


@pytest.mark.parametrize("p", list(BUNDLED_RANGE))
def test_bundled_circuits_pass_their_period(p, bundled):
    report = verify_periodicity(bundled[p], p)
    assert report.passed, report.reason
    assert min(report.masses.values()) >= 0.5


@pytest.mark.parametrize("q", [5, 7])
def test_s3_fails_longer_claims(q, s3):
    report = verify_periodicity(s3, q)
    assert not report.passed
    assert "outside" in report.reason


def test_wrong_short_period_fails(bundled):
    report = verify_periodicity(bundled[9], 3)
    assert not report.passed
    assert report.reason.startswith("y=")


def test_threshold_range(s3):
    with pytest.raises(InputRangeError):
        verify_periodicity(s3, 3, 0.0)
    with pytest.raises(InputRangeError):
        verify_periodicity(s3, 3, 1.5)


def test_render_bars(s3):
    text = render_bars(dft(postselect_input_state(s3, 0)), p=3, width=8)
    lines = text.splitlines()
    assert len(lines) == 4
    assert lines[0] == "   0 00 * 0.500000 ####"
    assert lines[2] == "   2 10   0.000000 "


def test_s3_wrong_claims_that_still_pass(s3):
    # period 2 keeps half the mass on bins {0, 2}; period 4 marks every bin
    assert spectral_overlaps(s3, 3).passing == [2, 4]


def test_s5_wrong_claims_that_still_pass(bundled):
    assert spectral_overlaps(bundled[5], 5).passing == [4, 6, 7, 8]


def test_overlaps_respect_the_threshold(s3):
    assert spectral_overlaps(s3, 3, threshold=0.9).passing == [4]


def test_overlap_sweep_over_bundled(bundled):
    sweep = overlap_sweep(bundled)
    assert sorted(sweep) == list(BUNDLED_RANGE)
    for p, report in sweep.items():
        assert p not in report.passing
        assert report.passing == sorted(report.passing)
        assert all(1 <= q <= 1 << bundled[p].n for q in report.passing)
    assert all(q >= 7 for q in sweep[9].passing)


@pytest.mark.parametrize("p", [3, 5, 9])
def test_overlaps_agree_with_verify(p, bundled):
    circuit = bundled[p]
    passing = set(spectral_overlaps(circuit, p).passing)
    for q in range(1, (1 << circuit.n) + 1):
        if q != p:
            assert verify_periodicity(circuit, q).passed == (q in passing)
