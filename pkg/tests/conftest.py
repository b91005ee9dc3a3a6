"""Shared fixtures: a session-wide acceptance report.

Tests that exercise one of the numbered acceptance criteria record a
single pass/fail line through the `criterion_report` fixture; the lines
are echoed in a dedicated terminal section at the end of the run so the
acceptance status is readable without scrolling through the log.
"""

import pytest

_LINES = {}


@pytest.fixture(scope="session")
def criterion_report():
    """Callable record(number, passed, detail) collecting one line per criterion."""

    def record(number: int, passed: bool, detail: str) -> None:
        word = "pass" if passed else "FAIL"
        _LINES[number] = f"criterion {number}: {word} - {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_LINES):
        terminalreporter.write_line(_LINES[number])
