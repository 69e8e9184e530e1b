import pytest

from zicburst import UserProfile, ZicConfig

ACCEPTANCE_LINES = []


@pytest.fixture
def paper_user():
    return UserProfile(3.5, 2.0)


@pytest.fixture
def symmetric():
    """Factory for the symmetric P=3.5, eps=2 channel at a given gain."""

    def make(a):
        return ZicConfig.symmetric(a, 3.5, 2.0)

    return make


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
