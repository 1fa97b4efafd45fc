import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
SUITE_BUDGET_S = 60.0

# criterion number -> (title, passed)
ACCEPTANCE: dict[int, tuple[str, bool]] = {}
_started = time.perf_counter()


def pytest_sessionstart(session):
    global _started
    _started = time.perf_counter()


@pytest.fixture
def corpus():
    return CORPUS


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    elapsed = time.perf_counter() - _started
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[num]
        if num == 10:
            ok = ok and elapsed < SUITE_BUDGET_S
            title = f"{title}; suite ran in {elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)"
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {title}")
