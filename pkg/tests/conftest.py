"""Collects the acceptance verdict lines and prints them after the run."""
import pytest

VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    """Record ``(label, ok, detail)`` as one PASS/FAIL line."""

    def record(label: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" ({detail})" if detail else "")
        VERDICTS.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
