"""Shared acceptance reporting.

test_acceptance registers one line per criterion before asserting,
so the summary below a run shows every criterion's verdict even when
a criterion is deliberately left red (see the README on published
table values that do not reproduce).
"""

from __future__ import annotations

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
