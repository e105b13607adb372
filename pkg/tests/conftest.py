import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record():
    """Record the outcome of an acceptance criterion for the summary."""
    def _record(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE[number] = (ok, detail)
        print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} {detail}")
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
