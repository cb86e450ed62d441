import pytest

# Acceptance criteria push "criterion N: PASS|FAIL ..." lines here; they are
# echoed at the end of the run so they survive output capturing.
ACCEPTANCE_LINES: list = []


@pytest.fixture
def report():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
