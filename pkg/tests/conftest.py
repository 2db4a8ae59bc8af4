"""Shared pytest plumbing.

The acceptance tests append one line per criterion to ACCEPTANCE_LINES;
the summary hook re-emits them after the run so the pass/fail verdicts
are visible regardless of output capturing.
"""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
