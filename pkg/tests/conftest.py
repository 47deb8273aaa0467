import os

import pytest

# the acceptance suite appends "PASS/FAIL criterion k: ..." lines here
ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    def emit(k, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


def pytest_configure(config):
    # keep thread pools small and reproducible under xdist-less runs
    os.environ.setdefault("TODA_ATLAS_THREADS", "4")
