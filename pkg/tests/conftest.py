import pytest

_report = []


@pytest.fixture(scope="session")
def acceptance_report():
    return _report.append


def pytest_terminal_summary(terminalreporter):
    if _report:
        terminalreporter.section("acceptance criteria")
        for line in _report:
            terminalreporter.write_line(line)
