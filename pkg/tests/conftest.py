import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line; printed again in the terminal summary."""

    def record(number, ok, text):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
