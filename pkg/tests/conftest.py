import time
from contextlib import contextmanager

import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    lines = request.config.stash[_LINES]

    @contextmanager
    def run(number, title):
        state = {"detail": ""}
        start = time.perf_counter()
        try:
            yield state
        except BaseException:
            lines.append((number, "FAIL", title, state["detail"], time.perf_counter() - start))
            raise
        lines.append((number, "PASS", title, state["detail"], time.perf_counter() - start))

    return run


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title, detail, elapsed in sorted(lines):
        extra = f" [{detail}]" if detail else ""
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}{extra} ({elapsed:.2f}s)")
