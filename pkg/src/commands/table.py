"""
`table FILE`: print a circuit's truth table, msb first like the published tables.
"""
import argparse

from src.circuits.simulator import truth_table
from src.circuits.textformat import table_to_json
from src.commands.common import circuit_argument, read_circuit
from src.services.function_analysis import fundamental_period
from src.utils.bits import bit_string


def register(subparsers) -> None:
    parser = subparsers.add_parser("table", help="print the truth table of a circuit")
    circuit_argument(parser)
    parser.add_argument("--json", action="store_true", help='emit {"n", "m", "table"}')
    parser.add_argument("--mark-period", action="store_true", help="rule off the first period")
    parser.set_defaults(handler=run)


def format_table(table, mark_period: bool = False) -> str:
    xs = " ".join(f"x{i}" for i in range(table.n, 0, -1))
    ys = " ".join(f"y{j}" for j in range(table.m, 0, -1))
    lines = [f"{xs} | {ys}"]
    rule = fundamental_period(table) if mark_period else None
    for x, y in enumerate(table.values):
        if rule is not None and x == rule and rule < len(table):
            lines.append("-" * len(lines[0]))
        xbits = "  ".join(bit_string(x, table.n))
        ybits = "  ".join(bit_string(y, table.m))
        lines.append(f" {xbits}  |  {ybits}")
    return "\n".join(lines)


def run(args: argparse.Namespace) -> int:
    table = truth_table(read_circuit(args))
    if args.json:
        print(table_to_json(table))
    else:
        print(format_table(table, mark_period=args.mark_period))
    return 0
