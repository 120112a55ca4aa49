import pytest

_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    """Record one PASS/FAIL line for the terminal summary, then assert."""

    def record(label: str, ok: bool, detail: str) -> None:
        _LINES.append(f"{'PASS' if ok else 'FAIL'}  criterion {label}: {detail}")
        assert ok, f"criterion {label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
