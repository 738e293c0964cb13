import json

import pytest

from src.circuits.models import Circuit, Gate
from src.services.pattern_synthesis import load_bundled
from tests.helpers import DATA


@pytest.fixture(scope="session")
def published_tables() -> dict[int, list[int]]:
    raw = json.loads((DATA / "published_tables.json").read_text())
    return {int(p): values for p, values in raw.items()}


@pytest.fixture(scope="session")
def bundled() -> dict[int, Circuit]:
    return load_bundled()


@pytest.fixture
def s3() -> Circuit:
    return Circuit(n=2, m=2, gates=(
        Gate.cnot("x2", "y1"),
        Gate.cnot("x1", "y1"),
        Gate.tof("x2", "y1", "y2"),
        Gate.cnot("y2", "y1"),
    ))
