"""Shared test plumbing: collect acceptance verdict lines for the summary.

The acceptance tests print one PASS/FAIL line each; recording them here and
re-emitting them in the terminal summary keeps the verdicts visible in plain
`pytest -v` output, where per-test stdout of passing tests is captured.
"""

ACCEPTANCE_LINES: list[str] = []


def record_acceptance_line(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance summary")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
