import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# criterion number -> one-line verdict, filled by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, title: str, ok: bool, detail: str = ""):
        verdict = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES[number] = f"criterion {number} [{verdict}] {title}" + (f": {detail}" if detail else "")
        print(ACCEPTANCE_LINES[number])
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
