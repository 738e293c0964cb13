"""
`scan`: conjecture table, type A/B prediction against the circuits on hand.
"""
import argparse
import json

from src.commands.common import budget_arguments, budget_from_args, data_dir
from src.services.exact_search import ScanReport, conjecture_scan

HEADER = f"{'p':>3}  {'[p]2':>6}  {'n':>2}  {'class':>5}  {'pred_NT':>7}  {'N_T':>3}  {'N_CN':>4}  {'Q':>3}"


def register(subparsers) -> None:
    parser = subparsers.add_parser("scan", help="check the Toffoli-count conjecture for odd periods")
    parser.add_argument("--max-bits", type=int, default=5, help="scan odd p with at most this many bits")
    parser.add_argument(
        "--with-search", action="store_true",
        help="certify that the stratum below each circuit's N_T is empty (small widths only)",
    )
    parser.add_argument("--json", action="store_true", help="emit the report as JSON")
    budget_arguments(parser)
    parser.set_defaults(handler=run)


def format_report(report: ScanReport, with_search: bool = False) -> str:
    lines = [HEADER + ("  certificate" if with_search else "")]
    for row in report.rows:
        actual = row.actual
        nt, ncn, q = (actual.n_toffoli, actual.n_cnot, actual.quantum_cost) if actual else ("-", "-", "-")
        line = (
            f"{row.p:>3}  {row.binary:>6}  {row.n:>2}  {row.type_class.value:>5}  "
            f"{row.predicted_toffoli:>7}  {nt:>3}  {ncn:>4}  {q:>3}"
        )
        if with_search:
            line += f"  {row.certificate or '-'}"
        lines.append(line)

    lines.append("")
    lines.append("census (odd n-bit periods, type B count, expected n-1):")
    for c in report.census:
        lines.append(
            f"n={c.n}  periods={c.odd_periods}  type_B={c.type_b}  expected={c.expected_type_b}  "
            f"{'ok' if c.ok else 'MISMATCH'}"
        )
    lines.append(f"conjecture: {'consistent' if report.all_match else 'MISMATCH'}")
    return "\n".join(lines)


def run(args: argparse.Namespace) -> int:
    budget = budget_from_args(args) if args.with_search else None
    report = conjecture_scan(args.max_bits, with_search=args.with_search, data_dir=data_dir(args), budget=budget)
    if args.json:
        print(json.dumps(report.model_dump(mode="json", by_alias=True), indent=2))
    else:
        print(format_report(report, with_search=args.with_search))
    return 0 if report.all_match else 1
