import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def orthonormal_columns(m, n, rng):
    Q, _ = np.linalg.qr(rng.standard_normal((m, n)))
    return Q


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}
ACCEPTANCE_NOTES: list[str] = []


@pytest.fixture
def acceptance():
    def record(number: int, ok: bool, detail: str):
        ACCEPTANCE_LINES[number] = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        return ok

    record.note = ACCEPTANCE_NOTES.append
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
    for note in ACCEPTANCE_NOTES:
        terminalreporter.write_line(f"info: {note}")
