import os
from pathlib import Path

import pytest

from zetadelta.cache import CacheStore
from zetadelta.divisor import sieve_divisor_counts, sieve_two_squares
from zetadelta.zeta.grid import sample_critical_line

CACHE = Path(os.environ.get("ZETADELTA_TEST_CACHE", Path(__file__).resolve().parent.parent / ".cache" / "tests"))


def _cached_grid(store: CacheStore, t0, t1, h):
    name = store.grid_name(t0, t1, h)
    if not store.has(name):
        store.store_grid(sample_critical_line(t0, t1, h), {"purpose": "test fixture"})
    return store.load_grid(t0, t1, h)


@pytest.fixture(scope="session")
def store():
    return CacheStore(CACHE)


@pytest.fixture(scope="session")
def table_1e4():
    return sieve_divisor_counts(10_000)


@pytest.fixture(scope="session")
def table_1e5():
    return sieve_divisor_counts(100_000)


@pytest.fixture(scope="session")
def squares_1e4():
    return sieve_two_squares(10_000)


@pytest.fixture(scope="session")
def grid_1e5(store):
    """|zeta|^2 on [2, 1e5] at h = 0.01, built once and kept on disk."""
    return _cached_grid(store, 2.0, 1e5, 0.01)


@pytest.fixture(scope="session")
def grid_5000(store):
    return _cached_grid(store, 2.0, 5000.0, 0.01)


@pytest.fixture(scope="session")
def grid_5000_half(store):
    return _cached_grid(store, 2.0, 5000.0, 0.005)


@pytest.fixture(scope="session")
def grid_1e4_half(store):
    return _cached_grid(store, 2.0, 1e4, 0.005)


_VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    """Record a PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        _VERDICTS.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)


def pytest_collection_modifyitems(items):
    for item in items:
        if {"grid_1e5", "grid_1e4_half"} & set(getattr(item, "fixturenames", ())):
            item.add_marker(pytest.mark.slow)
