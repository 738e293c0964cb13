"""
`synth P`: build a simple periodic circuit for period P.
"""
import argparse

from src.circuits.simulator import cost
from src.circuits.textformat import render_circuit, write_circuit
from src.commands.common import budget_arguments, budget_from_args, data_dir, say
from src.services.pattern_synthesis import synth


def register(subparsers) -> None:
    parser = subparsers.add_parser("synth", help="synthesize a circuit for period P")
    parser.add_argument("p", type=int, help="target period (>= 2)")
    parser.add_argument("--out", "-o", default=None, help="write the circuit here instead of stdout")
    parser.add_argument(
        "--search-budget", type=int, default=None, metavar="MAX_T",
        help="fall back to exact search with at most MAX_T Toffolis for periods no pattern covers",
    )
    budget_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    budget = budget_from_args(args, args.search_budget) if args.search_budget is not None else None
    circuit = synth(args.p, budget=budget, data_dir=data_dir(args))
    report = cost(circuit)
    comment = f"S_{args.p}: {report.line()}"

    if args.out:
        write_circuit(circuit, args.out, comment=comment)
        say(args, f"wrote {args.out}")
    else:
        print(render_circuit(circuit, comment=comment), end="")
    print(report.line(args.p))
    return 0
