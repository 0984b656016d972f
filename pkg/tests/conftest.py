import pytest

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance():
    """Record the outcome line of one acceptance criterion."""
    def record(number: int, ok: bool, detail: str):
        ACCEPTANCE[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
        print(ACCEPTANCE[number])
        assert ok, detail
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
