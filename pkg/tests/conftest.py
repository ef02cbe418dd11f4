import pytest

from geomfactor import classify

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record ``criterion(number, passed, summary)`` for the end-of-run report."""

    def record(number: int, passed: bool, summary: str) -> None:
        _ACCEPTANCE[number] = (passed, summary)
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {summary}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        passed, summary = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {summary}")


@pytest.fixture
def s32():
    return classify("3/2")


@pytest.fixture
def s23():
    return classify("2/3")


@pytest.fixture
def s2():
    return classify(2)
