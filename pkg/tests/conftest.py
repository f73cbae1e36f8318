import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ddop import DdopParams  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def fig7():
    """M=32, N=8, RRC rho=0.1, Q=20 (D auto = 2), O=8."""
    return DdopParams(M=32, N=8, Q=20, rho=0.1)


@pytest.fixture
def record_acceptance():
    def record(label: str, ok: bool, detail: str):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
