from pathlib import Path

import pytest

from hicite.corpus import parse_journal_indicator_table

FIXTURES = Path(__file__).parent / "fixtures"

_criteria: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def journal_table():
    with open(FIXTURES / "journals.csv", "rb") as fh:
        return parse_journal_indicator_table(fh)


@pytest.fixture
def criterion():
    """Record a pass/fail line for the acceptance summary."""

    def record(name: str, passed: bool, detail: str = "") -> None:
        _criteria[name] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: int(s.split()[0])):
        passed, detail = _criteria[name]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {name} {detail}")
