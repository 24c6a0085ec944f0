import sys

import pytest

from pfposet.labeling import label_poset
from pfposet.poset import build_poset

_POSETS = {}


def poset(n):
    if n not in _POSETS:
        _POSETS[n] = build_poset(n)
    return _POSETS[n]


@pytest.fixture(scope="session")
def pf():
    """Memoized PF_n builder shared across the session."""
    return poset


@pytest.fixture(scope="session")
def labeled():
    cache = {}

    def get(n):
        if n not in cache:
            P = poset(n)
            cache[n] = (P, label_poset(P))
        return cache[n]

    return get


def pytest_terminal_summary(terminalreporter):
    RESULTS = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        ok, detail = RESULTS[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
