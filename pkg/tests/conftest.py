import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("repo", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("repo")


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    """Keep the default zero cache out of the user's home directory."""
    root = tmp_path_factory.mktemp("zero-cache")
    old = os.environ.get("DISKGROWTH_CACHE_DIR")
    os.environ["DISKGROWTH_CACHE_DIR"] = str(root)
    yield root
    if old is None:
        os.environ.pop("DISKGROWTH_CACHE_DIR", None)
    else:
        os.environ["DISKGROWTH_CACHE_DIR"] = old


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for the terminal summary."""

    def record(number: int, ok: bool, detail: str, seconds: float):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({seconds:.1f} s) {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
