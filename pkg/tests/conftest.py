import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA: list[str] = []


@pytest.fixture
def record_criterion():
    def record(number: int, title: str, ok: bool, elapsed: float, limit: float) -> None:
        status = "PASS" if ok else "FAIL"
        _CRITERIA.append(f"[{status}] criterion {number:2d}: {title} ({elapsed:.2f} s, limit {limit:g} s)")

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
