"""
`spectrum FILE --y Y`: Fourier spectrum of the input register after observing y.
"""
import argparse
import json

from src.commands.common import circuit_argument, read_circuit
from src.services.spectral_verifier import dft, period_peak_mass, postselect_input_state, render_bars


def register(subparsers) -> None:
    parser = subparsers.add_parser("spectrum", help="print the DFT spectrum for one observed output")
    circuit_argument(parser)
    parser.add_argument("--y", type=int, required=True, help="observed output value")
    parser.add_argument("--period", "-p", type=int, default=None, help="mark the peak bins of this period")
    parser.add_argument("--json", action="store_true", help="emit [{k, probability}, ...]")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    spectrum = dft(postselect_input_state(read_circuit(args), args.y))
    if args.json:
        print(json.dumps(spectrum.to_records()))
        return 0
    print(render_bars(spectrum, p=args.period))
    if args.period is not None:
        print(f"peak mass for p={args.period}: {period_peak_mass(spectrum, args.period):.6f}")
    return 0
