import json
from pathlib import Path

import pytest

from cyclesurf.complex import TypeTag
from cyclesurf.cycles import DifferenceCycle

FIXTURES = Path(__file__).parent / "fixtures"

_SYMBOL_KIND = {"S^2": "sphere", "T^2": "torus", "K^2": "klein_bottle", "M^2": "moebius_strip"}

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def load_table(ambient):
    """Transcribed decomposition table as {k: {"f2": .., "parts": {frozenset(cycles): TypeTag}}}."""
    data = json.loads((FIXTURES / f"table_{ambient}.json").read_text())
    out = {}
    for row in data["tables"]:
        k = row["k"]
        n = 2 * k if ambient == "beta" else k
        parts = {}
        for group in row["groups"]:
            tag = TypeTag(_SYMBOL_KIND[group["type"]], group["copies"])
            for cycles in group["parts"]:
                key = frozenset(DifferenceCycle(c, n) for c in cycles)
                assert key not in parts, f"duplicate part in transcription: {cycles}"
                parts[key] = tag
        out[k] = {"f2": row.get("f2"), "parts": parts}
    return out


@pytest.fixture(scope="session")
def beta_table():
    return load_table("beta")


@pytest.fixture(scope="session")
def simplex_table():
    return load_table("simplex")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
