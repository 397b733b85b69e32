import time
from itertools import groupby

import pytest

_acceptance_lines = []


def brute_runs(text):
    """Run-length counts by grouping characters; independent of the package code."""
    counts = {}
    for bit, group in groupby(text):
        if bit == "1":
            length = len(list(group))
            counts[length] = counts.get(length, 0) + 1
    return counts


def brute_starts(text, i):
    starts = []
    pos = 1
    for bit, group in groupby(text):
        length = len(list(group))
        if bit == "1" and length == i:
            starts.append(pos)
        pos += length
    return starts


@pytest.fixture
def criterion(request):
    """Time a test and log a PASS/FAIL line for the terminal summary."""
    label = request.node.get_closest_marker("criterion").args[0]
    start = time.perf_counter()
    yield lambda: time.perf_counter() - start
    elapsed = time.perf_counter() - start
    failed = getattr(request.node, "_call_failed", False)
    _acceptance_lines.append(f"[{'FAIL' if failed else 'PASS'}] {label} ({elapsed:.2f}s)")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item._call_failed = report.failed


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
