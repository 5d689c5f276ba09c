import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    """Record one pass/fail line; the lines are printed in the terminal summary."""
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
