from pathlib import Path
from dotenv import load_dotenv

load_dotenv(Path(__file__).parent.parent / ".env", override=False)

import argparse  # noqa: E402
import logging  # noqa: E402
import sys  # noqa: E402
from typing import Optional, Sequence  # noqa: E402

from pydantic import ValidationError  # noqa: E402

from src.core.config import settings  # noqa: E402
from src.core.errors import PeriodicCircuitError  # noqa: E402

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="periodic-circuits",
        description="Synthesize, inspect and verify reversible circuits for simple periodic functions",
    )
    parser.add_argument("--data-dir", type=Path, default=None, help="bundled circuit directory")
    parser.add_argument("--quiet", "-q", action="store_true", help="only report errors")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Register commands
    from src.commands import export, scan, spectrum, synth, table, verify

    for command in (synth, table, verify, scan, export, spectrum):
        command.register(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    level = logging.ERROR if args.quiet else getattr(logging, settings.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        return args.handler(args)
    except PeriodicCircuitError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: {e.errors()[0]['msg']}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
