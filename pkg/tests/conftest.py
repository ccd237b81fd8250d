from functools import lru_cache

import pytest

from cdiffkit import build_field


@lru_cache(maxsize=None)
def gf(p, n):
    return build_field(p, n)


@pytest.fixture(scope="session")
def field():
    """Factory for cached database fields: field(3, 5) -> GF(3^5)."""
    return gf


# One pass/fail line per acceptance criterion, printed after the run.
_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not rep.failed:
        return
    name = marker.args[0]
    ok = rep.passed if rep.when == "call" else False
    prev = _CRITERIA.get(name, True)
    _CRITERIA[name] = prev and ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in _CRITERIA.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
