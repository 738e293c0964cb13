"""
Exception hierarchy shared by the library and the CLI.

Every error carries the process exit code the CLI maps it to:
  0 success, 1 verification failure, 2 usage/parse/unsupported, 3 budget exhausted.
"""
from typing import Any, Optional


class PeriodicCircuitError(Exception):
    exit_code: int = 2


class CircuitParseError(PeriodicCircuitError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InvalidCircuitError(PeriodicCircuitError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("invalid circuit: " + "; ".join(violations))


class InputRangeError(PeriodicCircuitError, ValueError):
    pass


class TableTooLargeError(PeriodicCircuitError):
    pass


class UnsupportedPeriodError(PeriodicCircuitError):
    pass


class SynthesisPreconditionError(PeriodicCircuitError):
    pass


class BundledDataError(PeriodicCircuitError):
    pass


class BudgetExhaustedError(PeriodicCircuitError):
    exit_code = 3

    def __init__(self, message: str, outcome: Any = None):
        self.outcome = outcome
        super().__init__(message)
