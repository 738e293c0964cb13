"""
`export FILE --format qasm|json|ascii`.
"""
import argparse

from src.commands.common import circuit_argument, read_circuit
from src.services.exporters import ExportFormat, export


def register(subparsers) -> None:
    parser = subparsers.add_parser("export", help="render a circuit as QASM, JSON or an ASCII diagram")
    circuit_argument(parser)
    parser.add_argument(
        "--format", "-f", dest="fmt", default=ExportFormat.ascii.value,
        choices=[f.value for f in ExportFormat],
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    print(export(read_circuit(args), ExportFormat(args.fmt)), end="")
    return 0
