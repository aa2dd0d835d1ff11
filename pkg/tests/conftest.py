"""Collects one verdict line per acceptance criterion and prints them at the end."""

import pytest

ACCEPTANCE: dict[int, str] = {}


def pytest_runtest_makereport(item, call):
    number = getattr(item.function, "criterion", None)
    if number is None or call.when != "call":
        return
    title = item.function.__doc__.strip().splitlines()[0] if item.function.__doc__ else item.name
    expected_failure = item.get_closest_marker("xfail") is not None
    if call.excinfo is None:
        verdict = "PASS"
    elif expected_failure:
        verdict = "FAIL (expected, see ledger)"
    else:
        verdict = "FAIL"
    ACCEPTANCE[number] = f"criterion {number:>2}: {verdict:<28} {title}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])


@pytest.fixture
def budget():
    """Assert a wall-clock bound around a block."""
    import time
    from contextlib import contextmanager

    @contextmanager
    def within(seconds: float):
        start = time.perf_counter()
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < seconds, f"took {elapsed:.1f}s, limit {seconds}s"
    return within
