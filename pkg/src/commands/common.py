"""
Argument helpers shared by the subcommands.
"""
import argparse
from pathlib import Path
from typing import Optional

from src.circuits.models import Circuit
from src.circuits.simulator import require_valid
from src.circuits.textformat import load_circuit
from src.services.exact_search import SearchBudget


def circuit_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("circuit", type=Path, help="circuit file in the .rev text format")


def read_circuit(args: argparse.Namespace) -> Circuit:
    circuit = load_circuit(args.circuit)
    require_valid(circuit)
    return circuit


def data_dir(args: argparse.Namespace) -> Optional[Path]:
    return getattr(args, "data_dir", None)


def budget_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-gates", type=int, default=None, help="search bound on total gates")
    parser.add_argument("--max-states", type=int, default=None, help="search bound on memoized tables")
    parser.add_argument("--workers", type=int, default=None, help="frontier expansion threads")
    parser.add_argument(
        "--writable-inputs", action="store_true",
        help="let search gates target input wires (larger state space)",
    )


def budget_from_args(args: argparse.Namespace, max_toffoli: Optional[int] = None) -> SearchBudget:
    overrides = {
        "max_toffoli": max_toffoli,
        "max_gates": args.max_gates,
        "max_states": args.max_states,
        "workers": args.workers,
    }
    return SearchBudget(
        input_wires_read_only=not args.writable_inputs,
        **{k: v for k, v in overrides.items() if v is not None},
    )


def say(args: argparse.Namespace, message: str) -> None:
    """Informational stdout line, silenced by --quiet."""
    if not getattr(args, "quiet", False):
        print(message)
