"""
`verify FILE --period P`: check a claimed period, optionally through the spectrum.
"""
import argparse

from src.circuits.simulator import truth_table
from src.commands.common import circuit_argument, read_circuit
from src.core.config import settings
from src.services.function_analysis import classify
from src.services.spectral_verifier import spectral_overlaps, verify_periodicity


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="check that a circuit has the claimed period")
    circuit_argument(parser)
    parser.add_argument("--period", "-p", type=int, required=True, help="claimed period")
    parser.add_argument("--spectral", action="store_true", help="also run the Fourier peak-mass check")
    parser.add_argument(
        "--threshold", type=float, default=None,
        help=f"peak-mass threshold (default {settings.SPECTRAL_THRESHOLD})",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    circuit = read_circuit(args)
    report = classify(truth_table(circuit))
    passed = report.fundamental_period == args.period and report.injective_within_period

    print(f"claimed_period: {args.period}")
    print(f"fundamental_period: {report.fundamental_period}")
    print(f"injective_within_period: {str(report.injective_within_period).lower()}")
    print(f"monoperiodic: {str(report.monoperiodic).lower()}")

    if args.spectral:
        spectral = verify_periodicity(circuit, args.period, args.threshold)
        print(f"spectral: {'pass' if spectral.passed else 'fail'} (threshold {spectral.threshold})")
        for y, mass in spectral.masses.items():
            print(f"  y={y} mass={mass:.6f}")
        overlaps = spectral_overlaps(circuit, args.period, spectral.threshold)
        print(f"  other periods passing: {len(overlaps.passing)} {overlaps.passing}")
        if spectral.reason:
            print(f"  {spectral.reason}")
        passed = passed and spectral.passed

    print("PASS" if passed else "FAIL")
    return 0 if passed else 1
