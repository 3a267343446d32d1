from __future__ import annotations

import pytest

from levelgray import midlevels


@pytest.fixture(scope="session")
def cache(tmp_path_factory):
    """One provider cache per test session, persisted to a temp file."""
    path = tmp_path_factory.mktemp("provider") / "paths.txt"
    c = midlevels.ProviderCache(path=str(path))
    midlevels.set_default_cache(c)
    yield c
    midlevels.set_default_cache(None)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
