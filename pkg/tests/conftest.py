"""Shared pytest plumbing.

The acceptance tests append one human-readable PASS/FAIL line per criterion;
the hook below echoes them in the terminal summary so they are visible in a
plain ``pytest -v`` run.
"""

from __future__ import annotations

ACCEPTANCE_LINES: list[str] = []


def record(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
