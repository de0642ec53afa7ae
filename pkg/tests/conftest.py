import time
from contextlib import contextmanager

import pytest

_LINES = []


@contextmanager
def _record(label, limit_s):
    start = time.perf_counter()
    status = "FAIL"
    detail = ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if elapsed >= limit_s:
            detail = f" (took {elapsed:.2f}s, limit {limit_s}s)"
            raise AssertionError(f"{label} exceeded its time limit{detail}")
        status = "PASS"
    except AssertionError as exc:
        detail = detail or f" ({str(exc).splitlines()[0][:160]})"
        raise
    finally:
        elapsed = time.perf_counter() - start
        line = f"{label}: {status} in {elapsed:.2f}s{'' if status == 'PASS' else detail}"
        _LINES.append(line)
        print(line)


@pytest.fixture
def criterion():
    """``with criterion(label, limit_s): ...`` times a block and logs pass/fail."""
    return _record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
