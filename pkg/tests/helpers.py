from pathlib import Path

from src.circuits.models import FunctionTable

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def square_table(values: list[int]) -> FunctionTable:
    """Table on n = m = log2(len(values)) bits."""
    n = (len(values) - 1).bit_length()
    return FunctionTable.of(n, n, values)
