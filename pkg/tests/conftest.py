import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from k8knot.diagram import GaussCode  # noqa: E402
from k8knot.harness import hamiltonian_family, random_embedding  # noqa: E402

DATA = Path(__file__).parent / "data"

TREFOIL = "O1+U2+O3+U1+O2+U3+"


@pytest.fixture(scope="session")
def table_knots():
    rows = json.loads((DATA / "table_knots.json").read_text())
    return {r["name"]: GaussCode.parse(r["gauss"]) for r in rows}


@pytest.fixture(scope="session")
def ham8():
    return hamiltonian_family(8)


@pytest.fixture(scope="session")
def k8_embeddings():
    return [random_embedding(8, seed, 10_000)[0] for seed in range(1, 4)]


# one line per acceptance criterion in the terminal summary
_ACCEPTANCE: dict[str, str] = {}


def record_acceptance(label: str, ok: bool, detail: str = "") -> None:
    _ACCEPTANCE[label] = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(_ACCEPTANCE, key=lambda k: int(k.split(".")[0])):
            terminalreporter.write_line(_ACCEPTANCE[key])
